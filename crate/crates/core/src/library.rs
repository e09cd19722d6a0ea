//! Relations, relator families and substitutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::word_to_matrix;
use crate::invariants::{count_fibers, fiber_delta, Delta};
use crate::surface::{
    chain_class, chain_config, degenerate_star_config_genus2, gsr_capped_config,
    separating_chain_boundary, standard_chain_config, torus_config, torus_star_config,
    CurveConfig, NamedCurve, SepType, Surface,
};
use crate::word::{same_ambient, Relator, TwistWord};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest genus accepted by the parametrized constructors.
pub const MAX_GENUS: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Braid,
    Commutation,
    Lantern,
    ChainOdd,
    ChainEven,
    Star,
    Gsr,
    DegenerateSpecialization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Reverse,
}

/// An identity `lhs = rhs` between words over one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub kind: RelationKind,
    pub lhs: TwistWord,
    pub rhs: TwistWord,
    /// `(Δe, Δσ)` of a forward substitution, when both sides are positive
    /// and the Endo sum is integral.
    pub deltas: Option<Delta>,
    pub provenance: String,
}

impl Relation {
    /// Checks that both sides have the same image on homology.
    pub fn new(
        name: impl Into<String>,
        kind: RelationKind,
        lhs: TwistWord,
        rhs: TwistWord,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let name = name.into();
        if !same_ambient(lhs.ambient(), rhs.ambient()) {
            return Err(Error::AmbientMismatch);
        }
        if word_to_matrix(&lhs)? != word_to_matrix(&rhs)? {
            return Err(Error::RelationNotHomologous(name));
        }
        let deltas = match (count_fibers(&Relator::new(lhs.clone())), count_fibers(&Relator::new(rhs.clone()))) {
            (Ok(a), Ok(b)) => fiber_delta(lhs.ambient().genus(), &a, &b).ok(),
            _ => None,
        };
        Ok(Relation {
            name,
            kind,
            lhs,
            rhs,
            deltas,
            provenance: provenance.into(),
        })
    }

    pub fn ambient(&self) -> &Arc<CurveConfig> {
        self.lhs.ambient()
    }

    fn side(&self, direction: Direction) -> (&TwistWord, &TwistWord) {
        match direction {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Reverse => (&self.rhs, &self.lhs),
        }
    }

    /// `(t_{c_1} .. t_{c_m})^(2m+2) = t_b` for an even chain with separating
    /// boundary `b`.
    pub fn chain_even(
        ambient: &Arc<CurveConfig>,
        name: &str,
        chain: &[&str],
        boundary: &str,
    ) -> Result<Self> {
        let m = chain.len();
        if m == 0 || m % 2 != 0 {
            return Err(Error::Unsupported(format!("even chain of length {m}")));
        }
        check_chain(ambient, chain)?;
        let lhs = TwistWord::from_ids(Arc::clone(ambient), chain)?.power(2 * m as i64 + 2);
        let rhs = TwistWord::from_ids(Arc::clone(ambient), &[boundary])?;
        Relation::new(
            name,
            RelationKind::ChainEven,
            lhs,
            rhs,
            format!("even chain relation over {} with boundary {boundary}", chain.join(" ")),
        )
    }

    /// `(t_{c_1} .. t_{c_m})^(m+1) = t_{d_1} t_{d_2}` for an odd chain.
    pub fn chain_odd(
        ambient: &Arc<CurveConfig>,
        name: &str,
        chain: &[&str],
        d1: &str,
        d2: &str,
    ) -> Result<Self> {
        let m = chain.len();
        if m % 2 == 0 {
            return Err(Error::Unsupported(format!("odd chain of length {m}")));
        }
        check_chain(ambient, chain)?;
        let lhs = TwistWord::from_ids(Arc::clone(ambient), chain)?.power(m as i64 + 1);
        let rhs = TwistWord::from_ids(Arc::clone(ambient), &[d1, d2])?;
        Relation::new(
            name,
            RelationKind::ChainOdd,
            lhs,
            rhs,
            format!("odd chain relation over {} with boundary {d1}, {d2}", chain.join(" ")),
        )
    }

    /// `(t_{a_0} t_{a_1} t_{a_2} t_{a_3})^3 = t_{c_1} t_{c_2} t_{c_3}` under an
    /// identification of the star curves with curves of `ambient`.
    pub fn star_on(
        ambient: &Arc<CurveConfig>,
        name: &str,
        kind: RelationKind,
        a: [&str; 4],
        c: [&str; 3],
        provenance: &str,
    ) -> Result<Self> {
        let lhs = TwistWord::from_ids(Arc::clone(ambient), &a)?.power(3);
        let rhs = TwistWord::from_ids(Arc::clone(ambient), &c)?;
        Relation::new(name, kind, lhs, rhs, provenance)
    }

    pub fn to_entry(&self) -> RelationEntry {
        RelationEntry {
            kind: self.kind,
            ambient: (**self.ambient()).clone(),
            lhs: self.lhs.to_text(),
            rhs: self.rhs.to_text(),
            deltas: self.deltas,
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_entry(name: &str, entry: &RelationEntry) -> Result<Self> {
        let ambient = Arc::new(entry.ambient.clone());
        let lhs = TwistWord::parse(Arc::clone(&ambient), &entry.lhs)?;
        let rhs = TwistWord::parse(ambient, &entry.rhs)?;
        let rel = Relation::new(name, entry.kind, lhs, rhs, entry.provenance.clone())?;
        if rel.deltas != entry.deltas {
            return Err(Error::Format(format!(
                "relation `{name}`: stored deltas {:?} differ from computed {:?}",
                entry.deltas, rel.deltas
            )));
        }
        Ok(rel)
    }
}

fn check_chain(ambient: &CurveConfig, chain: &[&str]) -> Result<()> {
    let ids = chain
        .iter()
        .map(|c| ambient.index_of(c))
        .collect::<Result<Vec<_>>>()?;
    if !ambient.is_chain(&ids) {
        return Err(Error::Unsupported(format!("{chain:?} is not a chain")));
    }
    Ok(())
}

fn ids(prefix: &str, range: impl Iterator<Item = u32>) -> Vec<String> {
    range.map(|k| format!("{prefix}{k}")).collect()
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn check_genus(g: u32) -> Result<()> {
    if g == 0 {
        return Err(Error::InvalidGenus(g));
    }
    if g > MAX_GENUS {
        return Err(Error::Unsupported(format!("genus {g} > {MAX_GENUS}")));
    }
    Ok(())
}

/// Genus-2 configuration for the lantern relation after capping: the
/// separating curve `x`, `y ~ y2 - y1`, `z ~ y1 + y2`, and boundary curves
/// `d1 = d2 ~ y1`, `d3 = d4 ~ y2`.
pub fn lantern_config() -> CurveConfig {
    let mut cfg = CurveConfig::new("lantern-g2", Surface::closed(2));
    let add = |cfg: &mut CurveConfig, id: &str, sep: SepType, class: [i64; 4]| {
        cfg.add_curve(NamedCurve::new(id, sep, class.to_vec())).expect("fresh id");
    };
    add(&mut cfg, "x", SepType::Separating { h: 1 }, [0, 0, 0, 0]);
    add(&mut cfg, "y", SepType::Nonseparating, [0, 0, -1, 1]);
    add(&mut cfg, "z", SepType::Nonseparating, [0, 0, 1, 1]);
    for (id, class) in [("d1", [0, 0, 1, 0]), ("d2", [0, 0, 1, 0]), ("d3", [0, 0, 0, 1]), ("d4", [0, 0, 0, 1])] {
        add(&mut cfg, id, SepType::Nonseparating, class);
    }
    for (a, b) in [("x", "y"), ("x", "z"), ("y", "z")] {
        cfg.set_intersection(a, b, 2).expect("known ids");
    }
    for d in ["d1", "d2", "d3", "d4"] {
        for other in ["x", "y", "z", "d1", "d2", "d3", "d4"] {
            if d != other {
                cfg.set_intersection(d, other, 0).expect("known ids");
            }
        }
    }
    cfg
}

/// Chain `a1..a_{2G+1}` on genus `G` plus the two boundary curves `d1`, `d2`
/// of a neighbourhood of `a1..a_{2G-1}`; both are isotopic to `a_{2G+1}`.
fn chain_odd_config(m: u32) -> Result<CurveConfig> {
    let big_g = (m + 1) / 2;
    let mut cfg = chain_config(big_g, "a")?;
    cfg.set_name(format!("chain-odd-m{m}"));
    let last = format!("a{}", 2 * big_g + 1);
    let prev = format!("a{}", 2 * big_g);
    for d in ["d1", "d2"] {
        cfg.add_curve(NamedCurve::new(d, SepType::Nonseparating, chain_class(big_g, 2 * big_g + 1)))?;
        for k in 1..=2 * big_g + 1 {
            let other = format!("a{k}");
            cfg.set_intersection(d, &other, u32::from(other == prev))?;
        }
        cfg.set_intersection(d, &last, 0)?;
    }
    cfg.set_intersection("d1", "d2", 0)?;
    Ok(cfg)
}

fn chain_even_config(m: u32) -> Result<CurveConfig> {
    let big_g = m / 2 + 1;
    let mut cfg = chain_config(big_g, "a")?;
    cfg.set_name(format!("chain-even-m{m}"));
    let sub = ids("a", 1..=m);
    let c = separating_chain_boundary(big_g, m, "front")?.renamed("c");
    cfg.add_chain_boundary(&as_strs(&sub), c)?;
    Ok(cfg)
}

/// Relation names understood by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "braid",
    "commutation",
    "star",
    "gsr",
    "chain_even",
    "chain_odd",
    "lantern",
    "star_g2",
    "star_torus",
];

/// A built-in relation with its own configuration. `param` is the genus for
/// `gsr`, the chain length for `chain_even`/`chain_odd`, and ignored
/// otherwise.
pub fn builtin(name: &str, param: u32) -> Result<Relation> {
    match name {
        "braid" => {
            let t = Arc::new(torus_config());
            Relation::new(
                "braid",
                RelationKind::Braid,
                TwistWord::parse(Arc::clone(&t), "a b a")?,
                TwistWord::parse(t, "b a b")?,
                "braid relation for curves meeting once",
            )
        }
        "commutation" => {
            let s = Arc::new(standard_chain_config(2)?);
            Relation::new(
                "commutation",
                RelationKind::Commutation,
                TwistWord::parse(Arc::clone(&s), "c1 c3")?,
                TwistWord::parse(s, "c3 c1")?,
                "twists along disjoint curves commute",
            )
        }
        "star" => {
            let cfg = Arc::new(gsr_capped_config(1)?);
            Relation::star_on(
                &cfg,
                "star",
                RelationKind::Star,
                ["a0", "a1", "a2", "a3"],
                ["c1", "c2", "c3"],
                "star relation; boundary curves capped to disks",
            )
        }
        "gsr" => {
            check_genus(param)?;
            let g = param;
            let cfg = Arc::new(gsr_capped_config(g)?);
            let a = ids("a", 0..=2 * g + 1);
            let lhs = TwistWord::from_ids(Arc::clone(&cfg), &as_strs(&a))?.power(2 * i64::from(g) + 1);
            let mut rhs_ids = vec!["c1"];
            rhs_ids.extend(std::iter::repeat_n("c2", g as usize));
            rhs_ids.push("c3");
            let rhs = TwistWord::from_ids(cfg, &rhs_ids)?;
            Relation::new(
                format!("gsr_g{g}"),
                RelationKind::Gsr,
                lhs,
                rhs,
                "generalized star relation; boundary curves capped to disks",
            )
        }
        "chain_even" => {
            if param == 0 || param % 2 != 0 || param / 2 + 1 > MAX_GENUS {
                return Err(Error::Unsupported(format!("even chain length {param}")));
            }
            let cfg = Arc::new(chain_even_config(param)?);
            let chain = ids("a", 1..=param);
            Relation::chain_even(&cfg, &format!("chain_even_m{param}"), &as_strs(&chain), "c")
        }
        "chain_odd" => {
            if param % 2 == 0 || (param + 1) / 2 > MAX_GENUS {
                return Err(Error::Unsupported(format!("odd chain length {param}")));
            }
            let cfg = Arc::new(chain_odd_config(param)?);
            let chain = ids("a", 1..=param);
            Relation::chain_odd(&cfg, &format!("chain_odd_m{param}"), &as_strs(&chain), "d1", "d2")
        }
        "lantern" => {
            let cfg = Arc::new(lantern_config());
            Relation::new(
                "lantern",
                RelationKind::Lantern,
                TwistWord::parse(Arc::clone(&cfg), "d1 d2 d3 d4")?,
                TwistWord::parse(cfg, "x y z")?,
                "lantern relation on a genus-2 surface after capping",
            )
        }
        "star_g2" => {
            let cfg = Arc::new(degenerate_star_config_genus2());
            Relation::star_on(
                &cfg,
                "star_g2",
                RelationKind::DegenerateSpecialization,
                ["b1", "b1", "b2", "b3"],
                ["b5", "c2", "b5"],
                "star relation with a0 = a1 = b1, a2 = b2, a3 = b3, c1 = c3 = b5 and c2 bounding a disk",
            )
        }
        "star_torus" => {
            let cfg = Arc::new(torus_star_config());
            Relation::star_on(
                &cfg,
                "star_torus",
                RelationKind::DegenerateSpecialization,
                ["a", "a", "b", "a"],
                ["c1", "c2", "c3"],
                "star relation on the torus with all three boundary curves bounding disks",
            )
        }
        other => Err(Error::UnknownRelation(other.to_string())),
    }
}

/// Family names understood by [`family`].
pub const FAMILY_NAMES: &[&str] = &["A", "B", "C", "D", "GSR_capped", "torus_elliptic", "C_printed"];

/// A relator family over its standard configuration.
pub fn family(name: &str, g: u32, n: u32) -> Result<Relator> {
    let ambient = family_ambient(name, g)?;
    family_on(name, g, n, ambient, "c")
}

/// Configuration the family `name` lives on by default.
pub fn family_ambient(name: &str, g: u32) -> Result<Arc<CurveConfig>> {
    match name {
        "A" | "B" | "C" | "D" | "C_printed" => {
            check_genus(g)?;
            Ok(Arc::new(standard_chain_config(g)?))
        }
        "GSR_capped" => {
            check_genus(g)?;
            Ok(Arc::new(gsr_capped_config(g)?))
        }
        "torus_elliptic" => {
            if g != 1 {
                return Err(Error::Unsupported(format!("torus_elliptic lives on genus 1, not {g}")));
            }
            Ok(Arc::new(torus_config()))
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// A relator family over `ambient`, with chain curves named
/// `{prefix}1 .. {prefix}{2g+1}`.
pub fn family_on(
    name: &str,
    g: u32,
    n: u32,
    ambient: Arc<CurveConfig>,
    prefix: &str,
) -> Result<Relator> {
    if !FAMILY_NAMES.contains(&name) {
        return Err(Error::UnknownFamily(name.to_string()));
    }
    if name == "torus_elliptic" {
        if g != 1 {
            return Err(Error::Unsupported(format!("torus_elliptic lives on genus 1, not {g}")));
        }
    } else {
        check_genus(g)?;
    }
    if n == 0 {
        return Err(Error::Unsupported("n must be positive".into()));
    }
    let n = i64::from(n);
    let gi = i64::from(g);
    let c = |range: Vec<u32>| ids(prefix, range.into_iter());
    let (period, exponent): (Vec<String>, i64) = match name {
        "A" => {
            let mut p = c((1..=2 * g).collect());
            p.push(format!("{prefix}{}", 2 * g + 1));
            p.push(format!("{prefix}{}", 2 * g + 1));
            p.extend(c((1..=2 * g).rev().collect()));
            (p, 2 * n)
        }
        "B" => (c((1..=2 * g + 1).collect()), (2 * gi + 2) * n),
        "C" => {
            let mut p = vec![format!("{prefix}1")];
            p.extend(c((1..=2 * g + 1).collect()));
            (p, (2 * gi + 1) * n)
        }
        "C_printed" => {
            let mut p = vec![format!("{prefix}1")];
            p.extend(c((1..=2 * g).collect()));
            (p, (2 * gi + 1) * n)
        }
        "D" => (c((1..=2 * g).collect()), 2 * (2 * gi + 1) * n),
        "GSR_capped" => (ids("a", 0..=2 * g + 1), (2 * gi + 1) * n),
        "torus_elliptic" => (vec!["a".into(), "b".into()], 6 * n),
        _ => unreachable!(),
    };
    let word = TwistWord::from_ids(ambient, &as_strs(&period))?.power(exponent);
    Ok(Relator::new(word))
}

/// Caveat attached to a family, if any.
pub fn family_note(name: &str) -> Option<&'static str> {
    match name {
        "C" => Some(
            "C(g) is stored as (c1^2 c2 .. c_{2g+1})^{2g+1}; the form without c_{2g+1} is available as C_printed and fails the homology check",
        ),
        "C_printed" => Some("not a relator: its image on homology is not the identity"),
        _ => None,
    }
}

/// Replaces the occurrence of one side of `rel` at `at` by the other side.
pub fn substitute(r: &Relator, rel: &Relation, at: usize, direction: Direction) -> Result<Relator> {
    if !same_ambient(r.word.ambient(), rel.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    let (from, to) = rel.side(direction);
    let letters = r.word.letters();
    if at + from.len() > letters.len() || &letters[at..at + from.len()] != from.letters() {
        return Err(Error::SubwordMismatch {
            at,
            detail: format!("`{}` does not occur here", from),
        });
    }
    let mut out = letters[..at].to_vec();
    out.extend_from_slice(to.letters());
    out.extend_from_slice(&letters[at + from.len()..]);
    let mut next = r.with_word(r.word.with_letters(out));
    let dir = match direction {
        Direction::Forward => "forward",
        Direction::Reverse => "reverse",
    };
    next.history.push(format!("{} {dir} at {at}", rel.name));
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Site {
    pub at: usize,
    pub direction: Direction,
}

/// Every contiguous occurrence of the left side (forward sites) and of the
/// right side (reverse sites).
pub fn match_sites(r: &Relator, rel: &Relation) -> Vec<Site> {
    if !same_ambient(r.word.ambient(), rel.ambient()) {
        return Vec::new();
    }
    let mut out: Vec<Site> = r
        .word
        .find_all(&rel.lhs)
        .into_iter()
        .map(|at| Site {
            at,
            direction: Direction::Forward,
        })
        .collect();
    out.extend(r.word.find_all(&rel.rhs).into_iter().map(|at| Site {
        at,
        direction: Direction::Reverse,
    }));
    out
}

/// Relations instantiated on the declared chains of `ambient`: braid and
/// commutation relations, the power identity for sub-chains of length at
/// most 6, and the odd chain relation where its boundary curve is present.
pub fn relations_for_ambient(ambient: &Arc<CurveConfig>) -> Vec<Relation> {
    let mut out = Vec::new();
    let n = ambient.len();
    let name = |i: usize| ambient.curve(i).id.clone();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (name(i), name(j));
            match ambient.geometric(i, j) {
                Some(0) => {
                    let lhs = TwistWord::from_ids(Arc::clone(ambient), &[&a, &b]);
                    let rhs = TwistWord::from_ids(Arc::clone(ambient), &[&b, &a]);
                    if let (Ok(l), Ok(r)) = (lhs, rhs) {
                        if let Ok(rel) = Relation::new(
                            format!("commute_{a}_{b}"),
                            RelationKind::Commutation,
                            l,
                            r,
                            "disjoint curves",
                        ) {
                            out.push(rel);
                        }
                    }
                }
                Some(1) if i < j => {
                    let lhs = TwistWord::from_ids(Arc::clone(ambient), &[&a, &b, &a]);
                    let rhs = TwistWord::from_ids(Arc::clone(ambient), &[&b, &a, &b]);
                    if let (Ok(l), Ok(r)) = (lhs, rhs) {
                        if let Ok(rel) = Relation::new(
                            format!("braid_{a}_{b}"),
                            RelationKind::Braid,
                            l,
                            r,
                            "curves meeting once",
                        ) {
                            out.push(rel);
                        }
                    }
                }
                _ => {}
            }
        }
    }
    for chain in ambient.chains() {
        let names: Vec<String> = chain.iter().map(|&i| name(i)).collect();
        for m in 2..=names.len().min(6) {
            for start in 0..=names.len() - m {
                let sub = as_strs(&names[start..start + m]);
                for k in 1..m {
                    if let Ok((l, r)) = crate::rewrite::power_collect(ambient, &sub, k) {
                        if let Ok(rel) = Relation::new(
                            format!("power_{}_k{k}", sub.join("_")),
                            RelationKind::Braid,
                            l,
                            r,
                            "power identity, a consequence of the braid relations",
                        ) {
                            out.push(rel);
                        }
                    }
                }
            }
        }
        let len = names.len();
        if len >= 3 && len % 2 == 1 {
            let sub = as_strs(&names[..len - 2]);
            let last = &names[len - 1];
            if let Ok(rel) = Relation::chain_odd(ambient, &format!("chain_odd_{}", sub.join("_")), &sub, last, last) {
                out.push(rel);
            }
        }
    }
    out
}

/// Serialized form of one relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub kind: RelationKind,
    pub ambient: CurveConfig,
    pub lhs: String,
    pub rhs: String,
    pub deltas: Option<Delta>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct LibraryDoc {
    schema_version: u32,
    relations: BTreeMap<String, RelationEntry>,
}

/// Named relations, read-only once built.
#[derive(Debug, Clone, Default)]
pub struct Library {
    relations: BTreeMap<String, Relation>,
}

impl Library {
    pub fn builtin() -> Result<Self> {
        let mut lib = Library::default();
        for name in ["braid", "commutation", "star", "lantern", "star_g2", "star_torus"] {
            lib.insert(builtin(name, 0)?);
        }
        for g in 1..=5 {
            lib.insert(builtin("gsr", g)?);
        }
        for m in [2, 4, 6] {
            lib.insert(builtin("chain_even", m)?);
        }
        for m in [1, 3, 5] {
            lib.insert(builtin("chain_odd", m)?);
        }
        Ok(lib)
    }

    pub fn insert(&mut self, rel: Relation) {
        self.relations.insert(rel.name.clone(), rel);
    }

    pub fn get(&self, name: &str) -> Result<&Relation> {
        self.relations
            .get(name)
            .ok_or_else(|| Error::UnknownRelation(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.relations.values()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn to_json(&self) -> String {
        let doc = LibraryDoc {
            schema_version: SCHEMA_VERSION,
            relations: self
                .relations
                .iter()
                .map(|(k, v)| (k.clone(), v.to_entry()))
                .collect(),
        };
        let value = serde_json::to_value(&doc).expect("library serializes");
        serde_json::to_string_pretty(&value).expect("value serializes") + "\n"
    }

    /// Loads and re-verifies every relation.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LibraryDoc =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        let mut lib = Library::default();
        for (name, entry) in &doc.relations {
            lib.insert(Relation::from_entry(name, entry)?);
        }
        Ok(lib)
    }
}
