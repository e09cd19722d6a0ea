//! Surfaces, named curve systems and their intersection data.
//!
//! Homology classes live in `H_1(Σ_g; Z)` written in a symplectic basis
//! `x_1..x_g, y_1..y_g` (in that coordinate order) with `<x_i, y_i> = 1`.
//! Geometric intersection counts are only known for the pairs a configuration
//! records; everything else is "unknown" and moves that need it refuse to run.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub boundary_count: u32,
}

impl Surface {
    pub fn closed(genus: u32) -> Self {
        Surface {
            genus,
            boundary_count: 0,
        }
    }

    /// Rank of first homology of the closed surface.
    pub fn rank(&self) -> usize {
        2 * self.genus as usize
    }
}

/// Topological type of a vanishing cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SepType {
    Nonseparating,
    /// Separates off a genus-`h` subsurface, `h <= floor(g/2)`.
    Separating { h: u32 },
    Nullhomotopic,
    BoundaryParallel,
}

impl SepType {
    pub fn has_zero_class(self) -> bool {
        matches!(self, SepType::Separating { .. } | SepType::Nullhomotopic)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCurve {
    pub id: String,
    pub sep_type: SepType,
    #[serde(rename = "class")]
    pub class: Vec<i64>,
}

impl NamedCurve {
    pub fn new(id: impl Into<String>, sep_type: SepType, class: Vec<i64>) -> Self {
        NamedCurve {
            id: id.into(),
            sep_type,
            class,
        }
    }

    pub fn renamed(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }
}

/// One invariant violation found by [`CurveConfig::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ClassLength { curve: String, got: usize },
    NotPrimitive { curve: String },
    NonzeroClass { curve: String },
    SeparatingOutOfRange { curve: String, h: u32 },
    AlgebraicExceedsGeometric { a: String, b: String, algebraic: i64, geometric: u32 },
    ChainCondition { a: String, b: String, expected: u32, found: Option<u32> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ClassLength { curve, got } => {
                write!(f, "{curve}: homology class has length {got}")
            }
            Violation::NotPrimitive { curve } => {
                write!(f, "{curve}: nonseparating curve with non-primitive class")
            }
            Violation::NonzeroClass { curve } => {
                write!(f, "{curve}: separating/nullhomotopic curve with nonzero class")
            }
            Violation::SeparatingOutOfRange { curve, h } => {
                write!(f, "{curve}: separating type h={h} out of range")
            }
            Violation::AlgebraicExceedsGeometric {
                a,
                b,
                algebraic,
                geometric,
            } => write!(
                f,
                "({a}, {b}): |algebraic| = {} exceeds geometric count {geometric}",
                algebraic.abs()
            ),
            Violation::ChainCondition {
                a,
                b,
                expected,
                found,
            } => match found {
                Some(n) => write!(f, "chain condition ({a}, {b}): expected {expected}, found {n}"),
                None => write!(f, "chain condition ({a}, {b}): expected {expected}, count unknown"),
            },
        }
    }
}

/// Named curves on a closed surface together with what is known about how
/// they meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ConfigDoc", try_from = "ConfigDoc")]
pub struct CurveConfig {
    name: String,
    surface: Surface,
    curves: Vec<NamedCurve>,
    index: HashMap<String, usize>,
    // keyed by (i, j) with i < j
    intersections: BTreeMap<(usize, usize), u32>,
    chains: Vec<Vec<usize>>,
}

impl CurveConfig {
    pub fn new(name: impl Into<String>, surface: Surface) -> Self {
        CurveConfig {
            name: name.into(),
            surface,
            curves: Vec::new(),
            index: HashMap::new(),
            intersections: BTreeMap::new(),
            chains: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn genus(&self) -> u32 {
        self.surface.genus
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curves(&self) -> &[NamedCurve] {
        &self.curves
    }

    pub fn curve(&self, idx: usize) -> &NamedCurve {
        &self.curves[idx]
    }

    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownCurve(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn add_curve(&mut self, curve: NamedCurve) -> Result<usize> {
        if self.index.contains_key(&curve.id) {
            return Err(Error::DuplicateCurve(curve.id));
        }
        let expected = self.surface.rank();
        if curve.class.len() != expected {
            return Err(Error::ClassLength {
                curve: curve.id,
                got: curve.class.len(),
                expected,
            });
        }
        let idx = self.curves.len();
        self.index.insert(curve.id.clone(), idx);
        self.curves.push(curve);
        Ok(idx)
    }

    pub fn set_intersection(&mut self, a: &str, b: &str, count: u32) -> Result<()> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if i != j {
            self.intersections.insert(ordered(i, j), count);
        }
        Ok(())
    }

    pub fn clear_intersection(&mut self, a: &str, b: &str) -> Result<()> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        self.intersections.remove(&ordered(i, j));
        Ok(())
    }

    pub fn declare_chain(&mut self, ids: &[&str]) -> Result<()> {
        let chain = ids
            .iter()
            .map(|id| self.index_of(id))
            .collect::<Result<Vec<_>>>()?;
        self.chains.push(chain);
        Ok(())
    }

    /// Geometric intersection count; a curve meets itself zero times.
    pub fn geometric(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(0);
        }
        self.intersections.get(&ordered(i, j)).copied()
    }

    pub fn geometric_by_id(&self, a: &str, b: &str) -> Result<Option<u32>> {
        Ok(self.geometric(self.index_of(a)?, self.index_of(b)?))
    }

    /// `<[u], [v]>` under the standard symplectic form.
    pub fn algebraic_intersection(&self, u: &str, v: &str) -> Result<i64> {
        let i = self.index_of(u)?;
        let j = self.index_of(v)?;
        Ok(pairing(&self.curves[i].class, &self.curves[j].class))
    }

    /// True when the listed curves satisfy both chain conditions according to
    /// the recorded geometric counts.
    pub fn is_chain(&self, ids: &[usize]) -> bool {
        for (p, &a) in ids.iter().enumerate() {
            for (q, &b) in ids.iter().enumerate().skip(p + 1) {
                let expected = if q == p + 1 { 1 } else { 0 };
                if a == b || self.geometric(a, b) != Some(expected) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks every configuration invariant; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let rank = self.surface.rank();
        let max_h = self.surface.genus / 2;
        for c in &self.curves {
            if c.class.len() != rank {
                out.push(Violation::ClassLength {
                    curve: c.id.clone(),
                    got: c.class.len(),
                });
                continue;
            }
            match c.sep_type {
                SepType::Nonseparating => {
                    if !is_primitive(&c.class) {
                        out.push(Violation::NotPrimitive { curve: c.id.clone() });
                    }
                }
                SepType::Separating { h } => {
                    if h == 0 || h > max_h {
                        out.push(Violation::SeparatingOutOfRange {
                            curve: c.id.clone(),
                            h,
                        });
                    }
                    if c.class.iter().any(|&x| x != 0) {
                        out.push(Violation::NonzeroClass { curve: c.id.clone() });
                    }
                }
                SepType::Nullhomotopic => {
                    if c.class.iter().any(|&x| x != 0) {
                        out.push(Violation::NonzeroClass { curve: c.id.clone() });
                    }
                }
                SepType::BoundaryParallel => {}
            }
        }
        for (&(i, j), &count) in &self.intersections {
            let (a, b) = (&self.curves[i], &self.curves[j]);
            if a.class.len() != rank || b.class.len() != rank {
                continue;
            }
            let alg = pairing(&a.class, &b.class);
            if alg.unsigned_abs() > u64::from(count) {
                out.push(Violation::AlgebraicExceedsGeometric {
                    a: a.id.clone(),
                    b: b.id.clone(),
                    algebraic: alg,
                    geometric: count,
                });
            }
        }
        for chain in &self.chains {
            for (p, &a) in chain.iter().enumerate() {
                for (q, &b) in chain.iter().enumerate().skip(p + 1) {
                    let expected = if q == p + 1 { 1 } else { 0 };
                    let found = self.geometric(a, b);
                    if found != Some(expected) {
                        out.push(Violation::ChainCondition {
                            a: self.curves[a].id.clone(),
                            b: self.curves[b].id.clone(),
                            expected,
                            found,
                        });
                    }
                }
            }
        }
        out
    }

    /// Adds the boundary curve of a regular neighbourhood of the contiguous
    /// run `sub` of a declared chain. The new curve misses the run and every
    /// chain curve not adjacent to it, and meets the two neighbours twice.
    pub fn add_chain_boundary(&mut self, sub: &[&str], curve: NamedCurve) -> Result<usize> {
        let run = sub
            .iter()
            .map(|id| self.index_of(id))
            .collect::<Result<Vec<_>>>()?;
        let host = self
            .chains
            .iter()
            .find_map(|chain| {
                chain
                    .windows(run.len())
                    .position(|w| w == run.as_slice())
                    .map(|start| (chain.clone(), start))
            })
            .ok_or_else(|| {
                Error::InvalidBoundary(format!("{sub:?} is not a run of a declared chain"))
            })?;
        let (chain, start) = host;
        let end = start + run.len();
        let idx = self.add_curve(curve)?;
        for (pos, &c) in chain.iter().enumerate() {
            let neighbour = (start > 0 && pos == start - 1) || pos == end;
            self.intersections
                .insert(ordered(idx, c), if neighbour { 2 } else { 0 });
        }
        for other in 0..idx {
            if self.curves[other].sep_type == SepType::Nullhomotopic {
                self.intersections.insert(ordered(idx, other), 0);
            }
        }
        Ok(idx)
    }

    /// Adds a nullhomotopic curve, disjoint from everything.
    pub fn add_nullhomotopic(&mut self, id: &str) -> Result<usize> {
        let rank = self.surface.rank();
        let idx = self.add_curve(NamedCurve::new(id, SepType::Nullhomotopic, vec![0; rank]))?;
        for other in 0..idx {
            self.intersections.insert(ordered(idx, other), 0);
        }
        Ok(idx)
    }
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Standard symplectic pairing on coordinates `(x_1..x_g, y_1..y_g)`.
pub fn pairing(a: &[i64], b: &[i64]) -> i64 {
    let g = a.len() / 2;
    (0..g).map(|i| a[i] * b[g + i] - a[g + i] * b[i]).sum()
}

fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0u64, |acc, &x| gcd(acc, x.unsigned_abs())) == 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn basis_x(g: u32, i: u32) -> Vec<i64> {
    let mut v = vec![0; 2 * g as usize];
    v[(i - 1) as usize] = 1;
    v
}

fn basis_y(g: u32, i: u32) -> Vec<i64> {
    let mut v = vec![0; 2 * g as usize];
    if (1..=g).contains(&i) {
        v[(g + i - 1) as usize] = 1;
    }
    v
}

/// Homology class of the `k`-th curve of the standard chain:
/// `c_{2i} -> x_i`, `c_{2i-1} -> y_i - y_{i-1}` with `y_0 = y_{g+1} = 0`.
pub fn chain_class(g: u32, k: u32) -> Vec<i64> {
    if k % 2 == 0 {
        basis_x(g, k / 2)
    } else {
        let i = (k + 1) / 2;
        let hi = basis_y(g, i);
        let lo = basis_y(g, i - 1);
        hi.iter().zip(&lo).map(|(a, b)| a - b).collect()
    }
}

/// Closed genus-`g` surface carrying the chain `{prefix}1 .. {prefix}{2g+1}`.
pub fn chain_config(g: u32, prefix: &str) -> Result<CurveConfig> {
    if g == 0 {
        return Err(Error::InvalidGenus(g));
    }
    let mut cfg = CurveConfig::new(format!("chain-{prefix}-g{g}"), Surface::closed(g));
    let n = 2 * g + 1;
    let ids: Vec<String> = (1..=n).map(|k| format!("{prefix}{k}")).collect();
    for (k, id) in (1..=n).zip(&ids) {
        cfg.add_curve(NamedCurve::new(id.clone(), SepType::Nonseparating, chain_class(g, k)))?;
    }
    for a in 0..n as usize {
        for b in a + 1..n as usize {
            cfg.intersections
                .insert((a, b), if b == a + 1 { 1 } else { 0 });
        }
    }
    cfg.chains.push((0..n as usize).collect());
    Ok(cfg)
}

/// The curves `c_1, ..., c_{2g+1}` on the closed genus-`g` surface.
pub fn standard_chain_config(g: u32) -> Result<CurveConfig> {
    chain_config(g, "c")
}

/// The torus with its two standard curves `a` and `b`.
pub fn torus_config() -> CurveConfig {
    let mut cfg = CurveConfig::new("torus", Surface::closed(1));
    cfg.add_curve(NamedCurve::new("a", SepType::Nonseparating, chain_class(1, 1)))
        .expect("fresh config");
    cfg.add_curve(NamedCurve::new("b", SepType::Nonseparating, chain_class(1, 2)))
        .expect("fresh config");
    cfg.intersections.insert((0, 1), 1);
    cfg.chains.push(vec![0, 1]);
    cfg
}

/// Torus plus the three star boundary curves, all bounding disks.
pub fn torus_star_config() -> CurveConfig {
    let mut cfg = torus_config();
    cfg.set_name("torus-star");
    for id in ["c1", "c2", "c3"] {
        cfg.add_nullhomotopic(id).expect("fresh ids");
    }
    cfg
}

/// Genus-2 chain `b1..b5` plus the star boundary `c2`, which bounds a disk.
/// Under this specialization `a0 = a1 = b1`, `a2 = b2`, `a3 = b3` and
/// `c1 = c3 = b5`.
pub fn degenerate_star_config_genus2() -> CurveConfig {
    let mut cfg = chain_config(2, "b").expect("genus 2");
    cfg.set_name("star-g2");
    cfg.add_nullhomotopic("c2").expect("fresh id");
    cfg
}

/// Capped trident configuration: `a0 = a1 = [c_1]`, `a_i = [c_i]` for
/// `i >= 2`, and the three boundary curves capped to disks.
pub fn gsr_capped_config(g: u32) -> Result<CurveConfig> {
    if g == 0 {
        return Err(Error::InvalidGenus(g));
    }
    let mut cfg = CurveConfig::new(format!("gsr-capped-g{g}"), Surface::closed(g));
    let top = 2 * g + 1;
    cfg.add_curve(NamedCurve::new("a0", SepType::Nonseparating, chain_class(g, 1)))?;
    for k in 1..=top {
        cfg.add_curve(NamedCurve::new(
            format!("a{k}"),
            SepType::Nonseparating,
            chain_class(g, k),
        ))?;
    }
    // curve a_k sits at index k
    let n = top as usize + 1;
    for i in 0..n {
        for j in i + 1..n {
            let count = match (i, j) {
                (0, 1) => 0,
                (0, 2) => 1,
                (0, _) => 0,
                (i, j) if j == i + 1 => 1,
                _ => 0,
            };
            cfg.intersections.insert((i, j), count);
        }
    }
    cfg.chains.push((1..n).collect());
    cfg.chains.push(std::iter::once(0).chain(2..n).collect());
    for id in ["c1", "c2", "c3"] {
        cfg.add_nullhomotopic(id)?;
    }
    Ok(cfg)
}

/// Boundary of a regular neighbourhood of an even sub-chain of the standard
/// chain. `"front"` covers `c_1..c_L`, `"back"` the last `L` curves.
///
/// The separating type is reported as `min(L/2, g - L/2)`.
pub fn separating_chain_boundary(g: u32, chain_len: u32, placement: &str) -> Result<NamedCurve> {
    if g == 0 {
        return Err(Error::InvalidGenus(g));
    }
    if !matches!(placement, "front" | "back") {
        return Err(Error::UnknownPlacement(placement.to_string()));
    }
    if chain_len == 0 || chain_len % 2 != 0 {
        return Err(Error::InvalidBoundary(format!(
            "chain length {chain_len} must be positive and even"
        )));
    }
    let half = chain_len / 2;
    if half >= g {
        return Err(Error::InvalidBoundary(format!(
            "a chain of length {chain_len} has no separating boundary on a genus-{g} surface"
        )));
    }
    let h = half.min(g - half);
    Ok(NamedCurve::new(
        format!("{placement}{chain_len}"),
        SepType::Separating { h },
        vec![0; 2 * g as usize],
    ))
}

#[derive(Serialize, Deserialize)]
struct IntersectionDoc {
    a: String,
    b: String,
    count: u32,
}

#[derive(Serialize, Deserialize)]
struct ConfigDoc {
    name: String,
    surface: Surface,
    curves: Vec<NamedCurve>,
    intersections: Vec<IntersectionDoc>,
    chains: Vec<Vec<String>>,
}

impl From<CurveConfig> for ConfigDoc {
    fn from(cfg: CurveConfig) -> Self {
        let id = |i: usize| cfg.curves[i].id.clone();
        ConfigDoc {
            name: cfg.name.clone(),
            surface: cfg.surface,
            intersections: cfg
                .intersections
                .iter()
                .map(|(&(i, j), &count)| IntersectionDoc {
                    a: id(i),
                    b: id(j),
                    count,
                })
                .collect(),
            chains: cfg
                .chains
                .iter()
                .map(|c| c.iter().map(|&i| id(i)).collect())
                .collect(),
            curves: cfg.curves.clone(),
        }
    }
}

impl TryFrom<ConfigDoc> for CurveConfig {
    type Error = Error;

    fn try_from(doc: ConfigDoc) -> Result<Self> {
        let mut cfg = CurveConfig::new(doc.name, doc.surface);
        for c in doc.curves {
            cfg.add_curve(c)?;
        }
        for e in doc.intersections {
            cfg.set_intersection(&e.a, &e.b, e.count)?;
        }
        for chain in doc.chains {
            let ids: Vec<&str> = chain.iter().map(String::as_str).collect();
            cfg.declare_chain(&ids)?;
        }
        Ok(cfg)
    }
}
