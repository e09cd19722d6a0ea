//! Scripted derivations: collection moves, substitutions and checkpoints that
//! turn the standard relators into the smaller fibrations of the examples.

use std::sync::Arc;

use crate::derivation::{Derivation, Expect};
use crate::error::{Error, Result};
use crate::library::{builtin, family_on, Direction, Relation};
use crate::rewrite::{collect_subword, commute_script_to, Move, DEFAULT_BUDGET};
use crate::surface::{
    chain_config, separating_chain_boundary, torus_star_config,
    CurveConfig,
};
use crate::word::TwistWord;

/// Identifiers accepted by [`run`].
pub const EXAMPLE_IDS: &[&str] = &["5.1", "5.2", "5.3", "5.4", "5.5p", "5.5", "5.6"];

/// Runs one example. Each returned derivation is an independent branch; its
/// `example()` names the log file.
pub fn run(id: &str) -> Result<Vec<Derivation>> {
    match id {
        "5.1" => Ok(vec![elliptic(2)?]),
        "5.2" => Ok(vec![c2_star()?]),
        "5.3" => Ok(vec![b2_chains()?]),
        "5.4" => Ok(vec![d2_star()?]),
        "5.5p" => Ok(vec![d2_chain_once()?, d2_chain_twice()?]),
        "5.5" => Ok(vec![d3_front_pairs()?, d3_nested()?]),
        "5.6" => Ok(vec![b3_chains()?]),
        other => Err(Error::Unsupported(format!("unknown example `{other}`"))),
    }
}

fn parse(ambient: &Arc<CurveConfig>, text: &str) -> Result<TwistWord> {
    TwistWord::parse(Arc::clone(ambient), text)
}

/// Collects `pattern` into a contiguous block and returns where it starts.
fn collect(d: &mut Derivation, pattern: &TwistWord, note: &str) -> Result<usize> {
    let found = collect_subword(d.current(), pattern, DEFAULT_BUDGET)?.ok_or_else(|| {
        Error::Inconsistent(format!("{}: could not collect `{pattern}`", d.example()))
    })?;
    d.apply_script(&found.script, note)?;
    Ok(found.index)
}

fn collect_and_substitute(d: &mut Derivation, rel: &Relation) -> Result<usize> {
    let at = collect(d, &rel.lhs, &format!("collect {}", rel.name))?;
    d.substitute(rel, at, Direction::Forward, "")?;
    Ok(at)
}

/// Moves the block `[at, at+len)` to the end of the word.
fn rotate_to_end(d: &mut Derivation, at: usize, len: usize, note: &str) -> Result<()> {
    let steps = (at + len) as i64;
    d.apply(Move::Rotate { steps }, note)
}

/// `(ab)^(6n)` with `(a a b a)^3` collected and replaced by three
/// nullhomotopic twists; blowing them down leaves `E(n-1)`.
pub fn elliptic(n: u32) -> Result<Derivation> {
    if n == 0 {
        return Err(Error::Unsupported("n must be positive".into()));
    }
    let cfg = Arc::new(torus_star_config());
    let start = family_on("torus_elliptic", 1, n, Arc::clone(&cfg), "")?;
    let rel = builtin("star_torus", 0)?;
    let rel = Relation::star_on(
        &cfg,
        &rel.name,
        rel.kind,
        ["a", "a", "b", "a"],
        ["c1", "c2", "c3"],
        &rel.provenance,
    )?;
    let n = i64::from(n);
    let mut d = Derivation::new(if n == 2 { "5.1".to_string() } else { format!("5.1-n{n}") }, start)?;
    d.checkpoint("E(n)", false, Expect::Published(12 * n, -8 * n))?;
    collect_and_substitute(&mut d, &rel)?;
    d.checkpoint("star", false, Expect::Computed(12 * n - 9, -8 * n + 5))?;
    d.checkpoint("blowdown", true, Expect::Published(12 * (n - 1), -8 * (n - 1)))?;
    Ok(d)
}

fn star_g2() -> Result<(Arc<CurveConfig>, Relation)> {
    let rel = builtin("star_g2", 0)?;
    Ok((Arc::clone(rel.ambient()), rel))
}

/// `C(2)` with `(b1^2 b2 b3)^5` collected and a star relation applied inside.
pub fn c2_star() -> Result<Derivation> {
    let (cfg, rel) = star_g2()?;
    let start = family_on("C", 2, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.2", start)?;
    d.checkpoint("C(2)", false, Expect::Computed(26, -18))?;
    let block = parse(&cfg, "(b1^2 b2 b3)^5")?;
    let at = collect(&mut d, &block, "collect (b1^2 b2 b3)^5")?;
    d.substitute(&rel, at, Direction::Forward, "")?;
    d.checkpoint("star", false, Expect::Computed(17, -13))?;
    d.checkpoint("blowdown", true, Expect::Published(16, -12))?;
    Ok(d)
}

/// `D(2)` with `(b1^2 b2 b3)^5` collected, rotated to the end, and a star
/// relation applied inside.
pub fn d2_star() -> Result<Derivation> {
    let (cfg, rel) = star_g2()?;
    let start = family_on("D", 2, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.4", start)?;
    d.checkpoint("D(2)", false, Expect::Computed(36, -24))?;
    let block = parse(&cfg, "(b1^2 b2 b3)^5")?;
    let at = collect(&mut d, &block, "collect (b1^2 b2 b3)^5")?;
    rotate_to_end(&mut d, at, block.len(), "block to the end")?;
    let at = d.current().word.len() - block.len();
    d.substitute(&rel, at, Direction::Forward, "")?;
    d.checkpoint("star", false, Expect::Computed(27, -19))?;
    d.checkpoint("blowdown", true, Expect::Published(26, -18))?;
    Ok(d)
}

/// Chain `b1..b_{2g+1}` with separating boundaries named by `(id, run)`.
fn chain_with_boundaries(g: u32, boundaries: &[(&str, &[&str])]) -> Result<Arc<CurveConfig>> {
    let mut cfg = chain_config(g, "b")?;
    for (id, run) in boundaries {
        let len = run.len() as u32;
        let placement = if run[0] == "b1" { "front" } else { "back" };
        let curve = separating_chain_boundary(g, len, placement)?.renamed(*id);
        cfg.add_chain_boundary(run, curve)?;
    }
    for (i, (a, _)) in boundaries.iter().enumerate() {
        for (b, _) in &boundaries[i + 1..] {
            cfg.set_intersection(a, b, 0)?;
        }
    }
    Ok(Arc::new(cfg))
}

/// `B(2)` rearranged by commutations, then two even chain relations on the
/// pairs `b1 b2` and `b4 b5`.
pub fn b2_chains() -> Result<Derivation> {
    let cfg = chain_with_boundaries(2, &[("c", &["b1", "b2"]), ("cp", &["b4", "b5"])])?;
    let front = Relation::chain_even(&cfg, "chain_even_b1_b2", &["b1", "b2"], "c")?;
    let back = Relation::chain_even(&cfg, "chain_even_b4_b5", &["b4", "b5"], "cp")?;
    let start = family_on("B", 2, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.3", start)?;
    d.checkpoint("B(2)", false, Expect::Published(26, -18))?;
    let target = parse(&cfg, "(b1 b2 b1 b3 b2 b4 b3 b5 b4 b5)^3")?;
    let moves = commute_script_to(&d.current().word, &target)
        .ok_or_else(|| Error::Inconsistent("B(2) does not commute into pairs".into()))?;
    d.apply_all(moves, "interleave consecutive periods")?;
    collect_and_substitute(&mut d, &front)?;
    d.checkpoint("one chain", false, Expect::Published(15, -11))?;
    collect_and_substitute(&mut d, &back)?;
    d.checkpoint("two chains", false, Expect::Computed(4, -4))?;
    Ok(d)
}

fn d2_front() -> Result<(Arc<CurveConfig>, Relation)> {
    let cfg = chain_with_boundaries(2, &[("c", &["b1", "b2"])])?;
    let rel = Relation::chain_even(&cfg, "chain_even_b1_b2", &["b1", "b2"], "c")?;
    Ok((cfg, rel))
}

/// `D(2)` with `(b1 b2)^10` collected and one even chain relation applied.
pub fn d2_chain_once() -> Result<Derivation> {
    let (cfg, rel) = d2_front()?;
    let start = family_on("D", 2, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.5p-one", start)?;
    d.checkpoint("D(2)", false, Expect::Computed(36, -24))?;
    let at = collect(&mut d, &parse(&cfg, "(b1 b2)^10")?, "collect (b1 b2)^10")?;
    d.substitute(&rel, at, Direction::Forward, "")?;
    d.checkpoint("one chain", false, Expect::Computed(25, -17))?;
    Ok(d)
}

/// `D(2)` with three power identities applied first, which makes room for
/// two even chain relations on `b1 b2`.
pub fn d2_chain_twice() -> Result<Derivation> {
    let (cfg, rel) = d2_front()?;
    let start = family_on("D", 2, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.5p-two", start)?;
    d.checkpoint("D(2)", false, Expect::Computed(36, -24))?;
    let chain: Vec<String> = ["b1", "b2", "b3", "b4"].map(String::from).to_vec();
    for at in [0, 12, 24] {
        d.apply(
            Move::PowerCollect {
                at,
                chain: chain.clone(),
                k: 2,
                inverse: false,
            },
            "power identity",
        )?;
    }
    let at = collect(&mut d, &parse(&cfg, "(b1 b2)^12")?, "collect (b1 b2)^12")?;
    d.substitute(&rel, at, Direction::Forward, "")?;
    d.substitute(&rel, at + 1, Direction::Forward, "")?;
    d.checkpoint("two chains", false, Expect::Computed(14, -10))?;
    Ok(d)
}

fn d3_config() -> Result<(Arc<CurveConfig>, Relation, Relation)> {
    let cfg = chain_with_boundaries(3, &[("c", &["b1", "b2"]), ("d", &["b1", "b2", "b3", "b4"])])?;
    let c = Relation::chain_even(&cfg, "chain_even_b1_b2", &["b1", "b2"], "c")?;
    let dd = Relation::chain_even(&cfg, "chain_even_b1_b4", &["b1", "b2", "b3", "b4"], "d")?;
    Ok((cfg, c, dd))
}

/// `D(3)` with two even chain relations on `b1 b2`.
pub fn d3_front_pairs() -> Result<Derivation> {
    let (cfg, c, _) = d3_config()?;
    let start = family_on("D", 3, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.5-pairs", start)?;
    d.checkpoint("D(3)", false, Expect::Computed(76, -48))?;
    let at = collect(&mut d, &parse(&cfg, "(b1 b2)^12")?, "collect (b1 b2)^12")?;
    d.substitute(&c, at, Direction::Forward, "")?;
    d.checkpoint("one chain", false, Expect::Computed(65, -41))?;
    d.substitute(&c, at + 1, Direction::Forward, "")?;
    d.checkpoint("two chains", false, Expect::Computed(54, -34))?;
    Ok(d)
}

/// `D(3)` with the length-4 chain relation, then one on `b1 b2`. Power
/// identities first supply the extra `b1 b2` letters.
pub fn d3_nested() -> Result<Derivation> {
    let (cfg, c, dd) = d3_config()?;
    let start = family_on("D", 3, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.5-nested", start)?;
    d.checkpoint("D(3)", false, Expect::Computed(76, -48))?;
    let chain: Vec<String> = (1..=6).map(|k| format!("b{k}")).collect();
    for (at, k) in [(0, 4), (30, 4), (60, 3)] {
        d.apply(
            Move::PowerCollect {
                at,
                chain: chain.clone(),
                k,
                inverse: false,
            },
            "power identity",
        )?;
    }
    collect_and_substitute(&mut d, &dd)?;
    d.checkpoint("length-4 chain", false, Expect::Computed(37, -25))?;
    collect_and_substitute(&mut d, &c)?;
    d.checkpoint("both chains", false, Expect::Computed(26, -18))?;
    Ok(d)
}

/// `B(3)` with even chain relations on `b1 b2` and `b6 b7`.
pub fn b3_chains() -> Result<Derivation> {
    let cfg = chain_with_boundaries(3, &[("c", &["b1", "b2"]), ("d", &["b6", "b7"])])?;
    let front = Relation::chain_even(&cfg, "chain_even_b1_b2", &["b1", "b2"], "c")?;
    let back = Relation::chain_even(&cfg, "chain_even_b6_b7", &["b6", "b7"], "d")?;
    let start = family_on("B", 3, 1, Arc::clone(&cfg), "b")?;
    let mut d = Derivation::new("5.6", start)?;
    d.checkpoint("B(3)", false, Expect::Computed(48, -32))?;
    collect_and_substitute(&mut d, &front)?;
    d.checkpoint("one chain", false, Expect::Computed(37, -25))?;
    collect_and_substitute(&mut d, &back)?;
    d.checkpoint("two chains", false, Expect::Computed(26, -18))?;
    Ok(d)
}
