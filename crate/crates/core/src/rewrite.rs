//! Moves on factorizations and replayable move scripts.
//!
//! Commutation and braid moves need recorded intersection counts, so they only
//! apply to letters sharing a conjugator. Hurwitz moves are always legal.
//! Rotation and global conjugation change the product by a conjugation and
//! are therefore restricted to relators whose target is the identity.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::batch;
use crate::error::{Error, Result};
use crate::surface::CurveConfig;
use crate::word::{Generator, Relator, TwistWord};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    Commute {
        at: usize,
    },
    /// `x y x -> y x y` where `x` precedes `y` in the ambient curve order.
    BraidForward {
        at: usize,
    },
    /// `y x y -> x y x`, the inverse of [`Move::BraidForward`].
    BraidBackward {
        at: usize,
    },
    HurwitzRight {
        at: usize,
    },
    HurwitzLeft {
        at: usize,
    },
    GlobalConjugate {
        by: String,
    },
    /// Moves the first `steps` letters to the end (negative: the last ones
    /// to the front).
    Rotate {
        steps: i64,
    },
    /// Replaces `(t_1..t_m)^(k+1)` by its collected form, or back when
    /// `inverse` is set.
    PowerCollect {
        at: usize,
        chain: Vec<String>,
        k: usize,
        inverse: bool,
    },
}

impl Move {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Move::Commute { .. } => "commute",
            Move::BraidForward { .. } => "braid_forward",
            Move::BraidBackward { .. } => "braid_backward",
            Move::HurwitzRight { .. } => "hurwitz_right",
            Move::HurwitzLeft { .. } => "hurwitz_left",
            Move::GlobalConjugate { .. } => "global_conjugate",
            Move::Rotate { .. } => "rotate",
            Move::PowerCollect { .. } => "power_collect",
        }
    }

    /// The move undoing `self`. Global conjugation needs the ambient to
    /// invert its word.
    pub fn inverse(&self, ambient: &Arc<CurveConfig>) -> Result<Move> {
        Ok(match self {
            Move::Commute { at } => Move::Commute { at: *at },
            Move::BraidForward { at } => Move::BraidBackward { at: *at },
            Move::BraidBackward { at } => Move::BraidForward { at: *at },
            Move::HurwitzRight { at } => Move::HurwitzLeft { at: *at },
            Move::HurwitzLeft { at } => Move::HurwitzRight { at: *at },
            Move::GlobalConjugate { by } => Move::GlobalConjugate {
                by: TwistWord::parse(Arc::clone(ambient), by)?.invert().to_text(),
            },
            Move::Rotate { steps } => Move::Rotate { steps: -steps },
            Move::PowerCollect {
                at,
                chain,
                k,
                inverse,
            } => Move::PowerCollect {
                at: *at,
                chain: chain.clone(),
                k: *k,
                inverse: !inverse,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidDirection {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HurwitzSide {
    Left,
    Right,
}

fn check_bounds(w: &TwistWord, i: usize, width: usize) -> Result<()> {
    if i + width > w.len() {
        return Err(Error::OutOfBounds {
            index: i + width - 1,
            len: w.len(),
        });
    }
    Ok(())
}

fn curve_name(w: &TwistWord, i: usize) -> &str {
    &w.ambient().curve(i).id
}

/// Swaps letters `i` and `i+1` when their curves are disjoint.
pub fn commute(w: &TwistWord, i: usize) -> Result<TwistWord> {
    check_bounds(w, i, 2)?;
    let (a, b) = (&w.letters()[i], &w.letters()[i + 1]);
    if a.conjugator() != b.conjugator() {
        return Err(Error::IllegalMove(format!(
            "commute at {i}: letters carry different conjugators"
        )));
    }
    match w.ambient().geometric(a.base, b.base) {
        Some(0) => {}
        found => {
            return Err(Error::IllegalMove(format!(
                "commute at {i}: {} and {} meet {}",
                curve_name(w, a.base),
                curve_name(w, b.base),
                found.map_or("an unknown number of times".to_string(), |n| format!("{n} times"))
            )))
        }
    }
    let mut letters = w.letters().to_vec();
    letters.swap(i, i + 1);
    Ok(w.with_letters(letters))
}

/// Rewrites one side of the braid relation at `i..i+3` into the other.
pub fn braid(w: &TwistWord, i: usize, direction: BraidDirection) -> Result<TwistWord> {
    check_bounds(w, i, 3)?;
    let l = w.letters();
    let (x, y, z) = (&l[i], &l[i + 1], &l[i + 2]);
    if x != z || x.base == y.base || x.sign != y.sign || x.conjugator() != y.conjugator() {
        return Err(Error::IllegalMove(format!(
            "braid at {i}: letters do not form x y x with a shared conjugator and sign"
        )));
    }
    let ordered = x.base < y.base;
    if ordered != (direction == BraidDirection::Forward) {
        return Err(Error::IllegalMove(format!(
            "braid at {i}: pattern belongs to the other direction"
        )));
    }
    if w.ambient().geometric(x.base, y.base) != Some(1) {
        return Err(Error::IllegalMove(format!(
            "braid at {i}: {} and {} do not meet exactly once",
            curve_name(w, x.base),
            curve_name(w, y.base)
        )));
    }
    let mut letters = l.to_vec();
    letters[i] = y.clone();
    letters[i + 1] = x.clone();
    letters[i + 2] = y.clone();
    Ok(w.with_letters(letters))
}

/// Elementary transformation. Right: `(g, h) -> (g h g^-1, g)`; left:
/// `(g, h) -> (h, h^-1 g h)`.
pub fn hurwitz(w: &TwistWord, i: usize, side: HurwitzSide) -> Result<TwistWord> {
    check_bounds(w, i, 2)?;
    let (g, h) = (&w.letters()[i], &w.letters()[i + 1]);
    let (first, second) = match side {
        HurwitzSide::Right => (h.conjugated_by(&g.flatten()), g.clone()),
        HurwitzSide::Left => (h.clone(), g.conjugated_by(&h.inverse().flatten())),
    };
    let mut letters = w.letters().to_vec();
    letters[i] = first;
    letters[i + 1] = second;
    Ok(w.with_letters(letters))
}

pub fn global_conjugate(r: &Relator, by: &TwistWord) -> Result<Relator> {
    if !r.is_identity_target() {
        return Err(Error::NonIdentityTarget);
    }
    Ok(r.with_word(r.word.conjugate(by)?))
}

pub fn rotate(r: &Relator, steps: i64) -> Result<Relator> {
    if !r.is_identity_target() {
        return Err(Error::NonIdentityTarget);
    }
    let n = r.word.len();
    if n == 0 {
        return Ok(r.clone());
    }
    let s = steps.rem_euclid(n as i64) as usize;
    let mut letters = r.word.letters()[s..].to_vec();
    letters.extend_from_slice(&r.word.letters()[..s]);
    Ok(r.with_word(r.word.with_letters(letters)))
}

/// Both sides of the power identity for the chain `t_1..t_m`:
/// `(t_1..t_m)^(k+1) = (t_1..t_k)^(k+1) (t_{k+1}..t_1) (t_{k+2}..t_2) .. (t_m..t_{m-k})`.
pub fn power_collect(
    ambient: &Arc<CurveConfig>,
    chain: &[&str],
    k: usize,
) -> Result<(TwistWord, TwistWord)> {
    let ids = chain
        .iter()
        .map(|c| ambient.index_of(c))
        .collect::<Result<Vec<_>>>()?;
    let m = ids.len();
    if !ambient.is_chain(&ids) {
        return Err(Error::IllegalMove(format!("{chain:?} is not a chain")));
    }
    if k == 0 || k >= m {
        return Err(Error::IllegalMove(format!(
            "power identity needs 1 <= k <= m-1 (k = {k}, m = {m})"
        )));
    }
    let t = |i: usize| Generator::plain(ids[i], 1);
    let mut lhs = Vec::with_capacity(m * (k + 1));
    for _ in 0..=k {
        lhs.extend((0..m).map(t));
    }
    let mut rhs = Vec::with_capacity(m * (k + 1));
    for _ in 0..=k {
        rhs.extend((0..k).map(t));
    }
    for j in k..m {
        rhs.extend((j - k..=j).rev().map(t));
    }
    Ok((
        TwistWord::from_letters(Arc::clone(ambient), lhs)?,
        TwistWord::from_letters(Arc::clone(ambient), rhs)?,
    ))
}

fn replace_block(w: &TwistWord, at: usize, from: &TwistWord, to: &TwistWord) -> Result<TwistWord> {
    check_bounds(w, at, from.len())?;
    if &w.letters()[at..at + from.len()] != from.letters() {
        return Err(Error::SubwordMismatch {
            at,
            detail: format!("expected `{from}`"),
        });
    }
    let mut letters = w.letters()[..at].to_vec();
    letters.extend_from_slice(to.letters());
    letters.extend_from_slice(&w.letters()[at + from.len()..]);
    Ok(w.with_letters(letters))
}

pub fn apply_power_collect(
    w: &TwistWord,
    at: usize,
    chain: &[&str],
    k: usize,
    inverse: bool,
) -> Result<TwistWord> {
    let (lhs, rhs) = power_collect(w.ambient(), chain, k)?;
    if inverse {
        replace_block(w, at, &rhs, &lhs)
    } else {
        replace_block(w, at, &lhs, &rhs)
    }
}

pub fn apply_move(r: &Relator, mv: &Move) -> Result<Relator> {
    let w = &r.word;
    let word = match mv {
        Move::Commute { at } => commute(w, *at)?,
        Move::BraidForward { at } => braid(w, *at, BraidDirection::Forward)?,
        Move::BraidBackward { at } => braid(w, *at, BraidDirection::Backward)?,
        Move::HurwitzRight { at } => hurwitz(w, *at, HurwitzSide::Right)?,
        Move::HurwitzLeft { at } => hurwitz(w, *at, HurwitzSide::Left)?,
        Move::GlobalConjugate { by } => {
            let by = TwistWord::parse(Arc::clone(w.ambient()), by)?;
            return global_conjugate(r, &by);
        }
        Move::Rotate { steps } => return rotate(r, *steps),
        Move::PowerCollect {
            at,
            chain,
            k,
            inverse,
        } => {
            let ids: Vec<&str> = chain.iter().map(String::as_str).collect();
            apply_power_collect(w, *at, &ids, *k, *inverse)?
        }
    };
    Ok(r.with_word(word))
}

/// Stable digest of a word: SHA-256 of its canonical text, hex encoded.
pub fn state_hash(w: &TwistWord) -> String {
    hex::encode(Sha256::digest(w.to_text().as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    #[serde(rename = "move")]
    pub mv: Move,
    pub pre_hash: String,
    #[serde(default)]
    pub note: String,
}

/// Ordered moves, each pinned to the digest of the word it applies to.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveScript {
    pub steps: Vec<ScriptStep>,
}

impl MoveScript {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn moves(&self) -> impl Iterator<Item = &Move> {
        self.steps.iter().map(|s| &s.mv)
    }

    /// Applies `moves` to `start`, recording the pre-state digests.
    pub fn record<'a>(
        start: &Relator,
        moves: impl IntoIterator<Item = &'a Move>,
    ) -> Result<(MoveScript, Relator)> {
        let mut script = MoveScript::default();
        let mut cur = start.clone();
        for mv in moves {
            script.push(&mut cur, mv.clone(), String::new())?;
        }
        Ok((script, cur))
    }

    /// Applies one move to `cur` and appends it.
    pub fn push(&mut self, cur: &mut Relator, mv: Move, note: String) -> Result<()> {
        let pre_hash = state_hash(&cur.word);
        *cur = apply_move(cur, &mv)?;
        self.steps.push(ScriptStep { mv, pre_hash, note });
        Ok(())
    }

    pub fn append(&mut self, other: MoveScript) {
        self.steps.extend(other.steps);
    }

    /// Replays from `start`, failing on the first digest mismatch.
    pub fn replay(&self, start: &Relator) -> Result<Relator> {
        let mut cur = start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let found = state_hash(&cur.word);
            if found != step.pre_hash {
                return Err(Error::HashMismatch {
                    step: i,
                    expected: step.pre_hash.clone(),
                    found,
                });
            }
            cur = apply_move(&cur, &step.mv)?;
        }
        Ok(cur)
    }

    /// The script undoing `self`, anchored at the word `self` ends on.
    pub fn inverse(&self, start: &Relator) -> Result<MoveScript> {
        let end = self.replay(start)?;
        let ambient = Arc::clone(start.word.ambient());
        let moves = self
            .steps
            .iter()
            .rev()
            .map(|s| s.mv.inverse(&ambient))
            .collect::<Result<Vec<_>>>()?;
        Ok(MoveScript::record(&end, &moves)?.0)
    }
}

/// Result of a successful [`collect_subword`] search.
#[derive(Debug, Clone)]
pub struct Collected {
    pub script: MoveScript,
    /// Start of the contiguous occurrence in the final word.
    pub index: usize,
    pub result: Relator,
    pub explored: usize,
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Searches for moves making `pattern` contiguous in `r`.
///
/// Breadth-first over commutation, braid and rotation moves (in that order,
/// then by position). A state is a goal when the pattern occurs contiguously
/// or embeds as a subsequence; an embedding is finished by moving each pattern
/// letter left past the letters in between (commuting where recorded data
/// allows, otherwise by a left Hurwitz move, which leaves the moving letter
/// unchanged). Returns `None` when the budget of explored states runs out.
pub fn collect_subword(r: &Relator, pattern: &TwistWord, budget: usize) -> Result<Option<Collected>> {
    if !r.is_positive() {
        return Err(Error::NotPositive);
    }
    if !crate::word::same_ambient(r.word.ambient(), pattern.ambient()) {
        return Err(Error::AmbientMismatch);
    }
    if pattern.is_empty() {
        return Ok(Some(Collected {
            script: MoveScript::default(),
            index: 0,
            result: r.clone(),
            explored: 0,
        }));
    }
    let available: HashSet<&Generator> = r.word.letters().iter().collect();
    if pattern.len() > r.word.len() || pattern.letters().iter().any(|g| !available.contains(g)) {
        return Ok(None);
    }

    // Only the frontier keeps its words; earlier states are a parent link and
    // a 128-bit digest, which keeps a full budget within a few hundred MB.
    struct Node {
        parent: usize,
        mv: Option<Move>,
    }
    let rotate_ok = r.is_identity_target();
    let mut arena = vec![Node {
        parent: usize::MAX,
        mv: None,
    }];
    let mut seen: HashSet<u128> = HashSet::new();
    seen.insert(digest(r.word.letters()));
    let mut frontier = vec![(0usize, r.word.letters().to_vec())];
    let mut explored = 1usize;

    let finish = |arena: &[Node], node: usize, goal: Goal, explored: usize| -> Result<Collected> {
        let mut path = Vec::new();
        let mut cur = node;
        while let Some(mv) = &arena[cur].mv {
            path.push(mv.clone());
            cur = arena[cur].parent;
        }
        path.reverse();
        let (mut script, mut end) = MoveScript::record(r, &path)?;
        let index = match goal {
            Goal::Contiguous(i) => i,
            Goal::Embedded(positions) => {
                let (moves, _) = transport_moves(&end.word, &positions);
                for mv in moves {
                    script.push(&mut end, mv, String::new())?;
                }
                positions[0]
            }
        };
        Ok(Collected {
            script,
            index,
            result: end,
            explored,
        })
    };

    if let Some(goal) = goal_test(r.word.letters(), pattern.letters()) {
        return finish(&arena, 0, goal, explored).map(Some);
    }

    let ambient = Arc::clone(r.word.ambient());
    while !frontier.is_empty() {
        let expansions = batch::par_map(&frontier, |(_, letters)| {
            successors(&ambient, letters, rotate_ok)
                .into_iter()
                .map(|(mv, next)| {
                    let d = digest(&next);
                    (mv, next, d)
                })
                .collect::<Vec<_>>()
        });
        let mut next_frontier = Vec::new();
        for ((parent, _), succ) in frontier.iter().zip(expansions) {
            for (mv, letters, d) in succ {
                if !seen.insert(d) {
                    continue;
                }
                explored += 1;
                let goal = goal_test(&letters, pattern.letters());
                arena.push(Node {
                    parent: *parent,
                    mv: Some(mv),
                });
                let id = arena.len() - 1;
                if let Some(goal) = goal {
                    return finish(&arena, id, goal, explored).map(Some);
                }
                if explored >= budget {
                    return Ok(None);
                }
                next_frontier.push((id, letters));
            }
        }
        frontier = next_frontier;
    }
    Ok(None)
}

fn digest(letters: &[Generator]) -> u128 {
    use std::hash::{DefaultHasher, Hash, Hasher};
    let mut lo = DefaultHasher::new();
    letters.hash(&mut lo);
    let mut hi = DefaultHasher::new();
    0xa5u8.hash(&mut hi);
    letters.hash(&mut hi);
    (u128::from(hi.finish()) << 64) | u128::from(lo.finish())
}

enum Goal {
    Contiguous(usize),
    Embedded(Vec<usize>),
}

fn goal_test(word: &[Generator], pattern: &[Generator]) -> Option<Goal> {
    if let Some(i) = word.windows(pattern.len()).position(|w| w == pattern) {
        return Some(Goal::Contiguous(i));
    }
    best_embedding(word, pattern).map(Goal::Embedded)
}

/// Subsequence embedding with the fewest letters in between; ties go to the
/// leftmost start.
fn best_embedding(word: &[Generator], pattern: &[Generator]) -> Option<Vec<usize>> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for start in 0..word.len() {
        if word[start] != pattern[0] {
            continue;
        }
        let mut positions = vec![start];
        let mut j = start + 1;
        for p in &pattern[1..] {
            while j < word.len() && &word[j] != p {
                j += 1;
            }
            if j == word.len() {
                break;
            }
            positions.push(j);
            j += 1;
        }
        if positions.len() < pattern.len() {
            // later starts cannot embed either
            break;
        }
        let cost = positions[positions.len() - 1] - start + 1 - pattern.len();
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, positions));
        }
    }
    best.map(|(_, p)| p)
}

/// Moves pattern letters at `positions` left until they sit contiguously at
/// `positions[0]`.
fn transport_moves(w: &TwistWord, positions: &[usize]) -> (Vec<Move>, TwistWord) {
    let mut cur = w.clone();
    let mut moves = Vec::new();
    let start = positions[0];
    for (j, &p) in positions.iter().enumerate().skip(1) {
        let dest = start + j;
        let mut q = p;
        while q > dest {
            let mv = if commute(&cur, q - 1).is_ok() {
                Move::Commute { at: q - 1 }
            } else {
                Move::HurwitzLeft { at: q - 1 }
            };
            cur = match &mv {
                Move::Commute { at } => commute(&cur, *at),
                _ => hurwitz(&cur, q - 1, HurwitzSide::Left),
            }
            .expect("transport move is legal");
            moves.push(mv);
            q -= 1;
        }
    }
    (moves, cur)
}

fn successors(
    ambient: &Arc<CurveConfig>,
    letters: &[Generator],
    rotate_ok: bool,
) -> Vec<(Move, Vec<Generator>)> {
    let n = letters.len();
    let mut out = Vec::new();
    let word = TwistWord::from_letters_unchecked(Arc::clone(ambient), letters.to_vec());
    for i in 0..n.saturating_sub(1) {
        if letters[i] != letters[i + 1] {
            if let Ok(w) = commute(&word, i) {
                out.push((Move::Commute { at: i }, w.letters().to_vec()));
            }
        }
    }
    for (dir, make) in [
        (BraidDirection::Forward, (|at| Move::BraidForward { at }) as fn(usize) -> Move),
        (BraidDirection::Backward, |at| Move::BraidBackward { at }),
    ] {
        for i in 0..n.saturating_sub(2) {
            if let Ok(w) = braid(&word, i, dir) {
                out.push((make(i), w.letters().to_vec()));
            }
        }
    }
    if rotate_ok && n > 1 {
        let mut rotated = letters[1..].to_vec();
        rotated.push(letters[0].clone());
        out.push((Move::Rotate { steps: 1 }, rotated));
    }
    out
}

/// Commutation moves turning `from` into `target`, if the two differ only by
/// swaps of disjoint letters reachable greedily.
pub fn commute_script_to(from: &TwistWord, target: &TwistWord) -> Option<Vec<Move>> {
    if from.len() != target.len() {
        return None;
    }
    let mut cur = from.clone();
    let mut moves = Vec::new();
    for j in 0..target.len() {
        let want = &target.letters()[j];
        let q = (j..cur.len()).find(|&q| &cur.letters()[q] == want)?;
        for at in (j..q).rev() {
            cur = commute(&cur, at).ok()?;
            moves.push(Move::Commute { at });
        }
    }
    Some(moves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::word_to_matrix;
    use crate::surface::{chain_config, standard_chain_config, torus_config};

    fn parse(cfg: &Arc<CurveConfig>, s: &str) -> TwistWord {
        TwistWord::parse(Arc::clone(cfg), s).unwrap()
    }

    #[test]
    fn commute_examples() {
        let g2 = Arc::new(standard_chain_config(2).unwrap());
        assert_eq!(commute(&parse(&g2, "c1 c3"), 0).unwrap().to_text(), "c3 c1");
        assert!(matches!(commute(&parse(&g2, "c1 c2"), 0), Err(Error::IllegalMove(_))));
        let b = Arc::new(chain_config(2, "b").unwrap());
        assert_eq!(commute(&parse(&b, "b1 b4 b2"), 0).unwrap().to_text(), "b4 b1 b2");
        assert!(matches!(commute(&parse(&b, "b1"), 0), Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn braid_examples() {
        let t = Arc::new(torus_config());
        let w = parse(&t, "a b a");
        let f = braid(&w, 0, BraidDirection::Forward).unwrap();
        assert_eq!(f.to_text(), "b a b");
        assert_eq!(braid(&f, 0, BraidDirection::Backward).unwrap(), w);
        assert!(braid(&w, 0, BraidDirection::Backward).is_err());
        let g2 = Arc::new(standard_chain_config(2).unwrap());
        assert!(braid(&parse(&g2, "c1 c3 c1"), 0, BraidDirection::Forward).is_err());
    }

    #[test]
    fn hurwitz_examples() {
        let t = Arc::new(torus_config());
        let w = parse(&t, "a b");
        let r = hurwitz(&w, 0, HurwitzSide::Right).unwrap();
        assert_eq!(r.to_text(), "(a . b) a");
        assert_eq!(hurwitz(&r, 0, HurwitzSide::Left).unwrap(), w);
        assert_eq!(
            word_to_matrix(&r).unwrap(),
            word_to_matrix(&w).unwrap()
        );
        assert!(hurwitz(&w, 1, HurwitzSide::Left).is_err());
    }

    #[test]
    fn power_collect_sides() {
        let b = Arc::new(chain_config(2, "b").unwrap());
        let (l, r) = power_collect(&b, &["b1", "b2", "b3", "b4"], 2).unwrap();
        assert_eq!(l, parse(&b, "(b1 b2 b3 b4)^3"));
        assert_eq!(r, parse(&b, "(b1 b2)^3 b3 b2 b1 b4 b3 b2"));
        let (l, r) = power_collect(&b, &["b1", "b2"], 1).unwrap();
        assert_eq!(r.to_text(), "b1^2 b2 b1");
        assert_eq!(word_to_matrix(&l).unwrap(), word_to_matrix(&r).unwrap());
        assert!(power_collect(&b, &["b1", "b3"], 1).is_err());
        assert!(power_collect(&b, &["b1", "b2"], 2).is_err());
    }

    #[test]
    fn script_replay_and_inverse() {
        let t = Arc::new(torus_config());
        let start = Relator::new(parse(&t, "(a b)^6"));
        let moves = vec![
            Move::BraidForward { at: 0 },
            Move::HurwitzRight { at: 3 },
            Move::Rotate { steps: 5 },
            Move::GlobalConjugate { by: "a b^-1".into() },
            Move::HurwitzLeft { at: 7 },
        ];
        let (script, end) = MoveScript::record(&start, &moves).unwrap();
        assert_eq!(script.replay(&start).unwrap(), end);
        let back = script.inverse(&start).unwrap();
        assert_eq!(back.replay(&end).unwrap(), start);
        let mut broken = script.clone();
        broken.steps[2].pre_hash = "00".into();
        assert!(matches!(broken.replay(&start), Err(Error::HashMismatch { step: 2, .. })));
    }

    #[test]
    fn collect_trivial_cases() {
        let b = Arc::new(chain_config(2, "b").unwrap());
        let r = Relator::new(parse(&b, "(b1 b2 b3 b4)^10"));
        let whole = collect_subword(&r, &r.word, 100).unwrap().unwrap();
        assert!(whole.script.is_empty());
        assert_eq!(whole.index, 0);
        assert!(collect_subword(&r, &parse(&b, "b5"), 100).unwrap().is_none());
    }

    #[test]
    fn collect_chain_block() {
        let b = Arc::new(chain_config(2, "b").unwrap());
        let r = Relator::new(parse(&b, "(b1 b2 b3 b4)^10"));
        let pat = parse(&b, "(b1 b2)^6");
        let found = collect_subword(&r, &pat, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(found.result.word.subword(found.index, 12).unwrap(), pat);
        assert_eq!(found.script.replay(&r).unwrap(), found.result);
        assert_eq!(
            word_to_matrix(&found.result.word).unwrap(),
            word_to_matrix(&r.word).unwrap()
        );
    }

    #[test]
    fn collect_by_braids_on_torus() {
        let t = Arc::new(torus_config());
        let r = Relator::new(parse(&t, "(a b)^6"));
        let pat = parse(&t, "(a a b a)^3");
        let found = collect_subword(&r, &pat, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(found.result.word, pat);
        assert!(found.script.moves().all(|m| !matches!(m, Move::HurwitzLeft { .. })));
    }

    #[test]
    fn commute_script() {
        let b = Arc::new(chain_config(2, "b").unwrap());
        let from = parse(&b, "(b1 b2 b3 b4 b5)^2");
        let to = parse(&b, "b1 b2 b1 b3 b2 b4 b3 b5 b4 b5");
        let moves = commute_script_to(&from, &to).unwrap();
        let (_, end) = MoveScript::record(&Relator::new(from), &moves).unwrap();
        assert_eq!(end.word, to);
    }
}
