//! Words in Dehn twists, their text syntax, and relators.
//!
//! A [`Generator`] `(w . c)^s` stands for `w t_c^s w^-1 = t_{w(c)}^s`. The
//! conjugator `w` is kept flattened: a plain, freely reduced word of signed
//! twists with trailing powers of `c` removed (they fix `c`). That makes the
//! representation canonical within the free group and keeps every move
//! syntactically invertible.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::surface::CurveConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Twist {
    pub curve: usize,
    pub sign: i8,
}

impl Twist {
    pub fn new(curve: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Twist { curve, sign }
    }

    pub fn inverse(self) -> Self {
        Twist {
            curve: self.curve,
            sign: -self.sign,
        }
    }
}

/// Free reduction of a plain twist word.
pub fn free_reduce(word: impl IntoIterator<Item = Twist>) -> Vec<Twist> {
    let mut out: Vec<Twist> = Vec::new();
    for t in word {
        if out.last() == Some(&t.inverse()) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

pub fn invert_twists(word: &[Twist]) -> Vec<Twist> {
    word.iter().rev().map(|t| t.inverse()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub base: usize,
    pub sign: i8,
    conjugator: Vec<Twist>,
}

impl Generator {
    pub fn plain(base: usize, sign: i8) -> Self {
        Generator {
            base,
            sign,
            conjugator: Vec::new(),
        }
    }

    /// Builds the canonical form of `(conjugator . base)^sign`.
    pub fn new(base: usize, sign: i8, conjugator: impl IntoIterator<Item = Twist>) -> Self {
        let mut conj = free_reduce(conjugator);
        while conj.last().is_some_and(|t| t.curve == base) {
            conj.pop();
        }
        Generator {
            base,
            sign,
            conjugator: conj,
        }
    }

    pub fn conjugator(&self) -> &[Twist] {
        &self.conjugator
    }

    pub fn is_plain(&self) -> bool {
        self.conjugator.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Generator {
            base: self.base,
            sign: -self.sign,
            conjugator: self.conjugator.clone(),
        }
    }

    /// The letter as a plain word `w c^s w^-1`.
    pub fn flatten(&self) -> Vec<Twist> {
        let mut out = self.conjugator.clone();
        out.push(Twist::new(self.base, self.sign));
        out.extend(invert_twists(&self.conjugator));
        out
    }

    /// `w g w^-1`, absorbed into the conjugator.
    pub fn conjugated_by(&self, w: &[Twist]) -> Self {
        Generator::new(
            self.base,
            self.sign,
            w.iter().chain(self.conjugator.iter()).copied(),
        )
    }

    fn cancels(&self, other: &Generator) -> bool {
        self.base == other.base && self.sign == -other.sign && self.conjugator == other.conjugator
    }
}

/// Total order on letters used by normal forms: curve id, sign, conjugator
/// length, then conjugator letters.
pub fn cmp_letters(cfg: &CurveConfig, a: &Generator, b: &Generator) -> Ordering {
    let twist = |x: &Twist, y: &Twist| {
        cfg.curve(x.curve)
            .id
            .cmp(&cfg.curve(y.curve).id)
            .then(x.sign.cmp(&y.sign))
    };
    cfg.curve(a.base)
        .id
        .cmp(&cfg.curve(b.base).id)
        .then(a.sign.cmp(&b.sign))
        .then(a.conjugator.len().cmp(&b.conjugator.len()))
        .then_with(|| {
            a.conjugator
                .iter()
                .zip(&b.conjugator)
                .map(|(x, y)| twist(x, y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

#[derive(Clone)]
pub struct TwistWord {
    ambient: Arc<CurveConfig>,
    letters: Vec<Generator>,
}

impl PartialEq for TwistWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_ambient(&self.ambient, &other.ambient)
    }
}

impl Eq for TwistWord {}

impl fmt::Debug for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistWord({:?} on {})", self.to_text(), self.ambient.name())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn same_ambient(a: &Arc<CurveConfig>, b: &Arc<CurveConfig>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TwistWord {
    pub fn empty(ambient: Arc<CurveConfig>) -> Self {
        TwistWord {
            ambient,
            letters: Vec::new(),
        }
    }

    /// Wraps letters without reducing them; bases must index the ambient.
    pub fn from_letters(ambient: Arc<CurveConfig>, letters: Vec<Generator>) -> Result<Self> {
        let n = ambient.len();
        for g in &letters {
            if g.base >= n || g.conjugator.iter().any(|t| t.curve >= n) {
                return Err(Error::UnknownCurve(format!("curve index out of range ({n} curves)")));
            }
        }
        Ok(TwistWord { ambient, letters })
    }

    pub(crate) fn from_letters_unchecked(ambient: Arc<CurveConfig>, letters: Vec<Generator>) -> Self {
        TwistWord { ambient, letters }
    }

    /// Positive word in plain twists along the named curves.
    pub fn from_ids(ambient: Arc<CurveConfig>, ids: &[&str]) -> Result<Self> {
        let letters = ids
            .iter()
            .map(|id| ambient.index_of(id).map(|i| Generator::plain(i, 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistWord { ambient, letters })
    }

    pub fn parse(ambient: Arc<CurveConfig>, text: &str) -> Result<Self> {
        let letters = Parser::new(&ambient, text).parse_all()?;
        Ok(TwistWord { ambient, letters }.reduced())
    }

    pub fn ambient(&self) -> &Arc<CurveConfig> {
        &self.ambient
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|g| g.sign > 0)
    }

    pub fn with_letters(&self, letters: Vec<Generator>) -> Self {
        TwistWord {
            ambient: Arc::clone(&self.ambient),
            letters,
        }
    }

    pub fn reduced(&self) -> Self {
        let mut out: Vec<Generator> = Vec::with_capacity(self.letters.len());
        for g in &self.letters {
            if out.last().is_some_and(|h| h.cancels(g)) {
                out.pop();
            } else {
                out.push(g.clone());
            }
        }
        self.with_letters(out)
    }

    pub fn compose(&self, other: &TwistWord) -> Result<Self> {
        if !same_ambient(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(self.with_letters(letters).reduced())
    }

    pub fn invert(&self) -> Self {
        self.with_letters(self.letters.iter().rev().map(Generator::inverse).collect())
    }

    /// `by · self · by^-1`, with `by` absorbed letter by letter.
    pub fn conjugate(&self, by: &TwistWord) -> Result<Self> {
        if !same_ambient(&self.ambient, &by.ambient) {
            return Err(Error::AmbientMismatch);
        }
        let w = by.flatten();
        Ok(self.with_letters(self.letters.iter().map(|g| g.conjugated_by(&w)).collect()))
    }

    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        self.with_letters(letters).reduced()
    }

    /// The word as a freely reduced product of plain twists.
    pub fn flatten(&self) -> Vec<Twist> {
        free_reduce(self.letters.iter().flat_map(Generator::flatten))
    }

    /// The contiguous slice `[start, start + len)` as its own word.
    pub fn subword(&self, start: usize, len: usize) -> Result<Self> {
        if start + len > self.len() {
            return Err(Error::OutOfBounds {
                index: start + len,
                len: self.len(),
            });
        }
        Ok(self.with_letters(self.letters[start..start + len].to_vec()))
    }

    /// Positions where `pattern` occurs contiguously.
    pub fn find_all(&self, pattern: &TwistWord) -> Vec<usize> {
        let p = &pattern.letters;
        if p.is_empty() || p.len() > self.letters.len() {
            return Vec::new();
        }
        self.letters
            .windows(p.len())
            .enumerate()
            .filter(|(_, w)| *w == p.as_slice())
            .map(|(i, _)| i)
            .collect()
    }

    /// Re-expresses the word over another configuration by curve names.
    pub fn rebase(&self, ambient: Arc<CurveConfig>) -> Result<Self> {
        let map = |i: usize| ambient.index_of(&self.ambient.curve(i).id);
        let letters = self
            .letters
            .iter()
            .map(|g| {
                let conj = g
                    .conjugator
                    .iter()
                    .map(|t| map(t.curve).map(|c| Twist::new(c, t.sign)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Generator::new(map(g.base)?, g.sign, conj))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistWord { ambient, letters })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == self.letters[i] {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            let g = &self.letters[i];
            let exp = run as i64 * i64::from(g.sign);
            if g.conjugator.is_empty() {
                out.push_str(&self.ambient.curve(g.base).id);
            } else {
                out.push('(');
                out.push_str(&twists_text(&self.ambient, &g.conjugator));
                out.push_str(" . ");
                out.push_str(&self.ambient.curve(g.base).id);
                out.push(')');
            }
            if exp != 1 {
                out.push('^');
                out.push_str(&exp.to_string());
            }
            i += run;
        }
        out
    }
}

fn twists_text(cfg: &CurveConfig, word: &[Twist]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let mut run = 1;
        while i + run < word.len() && word[i + run] == word[i] {
            run += 1;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&cfg.curve(word[i].curve).id);
        let exp = run as i64 * i64::from(word[i].sign);
        if exp != 1 {
            out.push('^');
            out.push_str(&exp.to_string());
        }
        i += run;
    }
    out
}

struct Parser<'a> {
    cfg: &'a CurveConfig,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(cfg: &'a CurveConfig, src: &'a str) -> Self {
        Parser { cfg, src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn parse_all(&mut self) -> Result<Vec<Generator>> {
        let out = self.parse_seq()?;
        match self.peek() {
            None => Ok(out),
            Some(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    // seq := item* ; stops at ')' or '.' or end
    fn parse_seq(&mut self) -> Result<Vec<Generator>> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None | Some(')') | Some('.') => return Ok(out),
                _ => out.extend(self.parse_item()?),
            }
        }
    }

    fn parse_item(&mut self) -> Result<Vec<Generator>> {
        let atom = match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.parse_seq()?;
                match self.peek() {
                    Some(')') => {
                        self.bump();
                        inner
                    }
                    Some('.') => {
                        self.bump();
                        let base = self.parse_ident()?;
                        if self.peek() != Some(')') {
                            return self.err("expected `)` after conjugated curve");
                        }
                        self.bump();
                        let conj: Vec<Twist> =
                            free_reduce(inner.iter().flat_map(Generator::flatten));
                        vec![Generator::new(base, 1, conj)]
                    }
                    _ => return self.err("unclosed `(`"),
                }
            }
            Some(_) => vec![Generator::plain(self.parse_ident()?, 1)],
            None => return self.err("unexpected end of input"),
        };
        let exp = self.parse_exponent()?;
        let unit: Vec<Generator> = if exp < 0 {
            atom.iter().rev().map(Generator::inverse).collect()
        } else {
            atom
        };
        let mut out = Vec::with_capacity(unit.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            out.extend(unit.iter().cloned());
        }
        Ok(out)
    }

    fn parse_ident(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a curve name");
        }
        let id = &rest[..len];
        match self.cfg.index_of(id) {
            Ok(i) => {
                self.pos += len;
                Ok(i)
            }
            Err(_) => self.err(format!("unknown curve `{id}`")),
        }
    }

    fn parse_exponent(&mut self) -> Result<i64> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut len = 0;
        if rest.starts_with('-') {
            len = 1;
        }
        len += rest[len..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count();
        match rest[..len].parse::<i64>() {
            Ok(n) => {
                self.pos += len;
                Ok(n)
            }
            Err(_) => self.err("expected an integer exponent"),
        }
    }
}

/// What a relator word is claimed to equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Identity,
    /// Product of boundary twists, for relators lifted to a surface with
    /// boundary. Bookkeeping only.
    Boundary(TwistWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: TwistWord,
    pub target: Target,
    /// Names of substitutions applied so far, in order.
    pub history: Vec<String>,
}

impl Relator {
    pub fn new(word: TwistWord) -> Self {
        Relator {
            word,
            target: Target::Identity,
            history: Vec::new(),
        }
    }

    pub fn is_identity_target(&self) -> bool {
        self.target == Target::Identity
    }

    pub fn is_positive(&self) -> bool {
        self.word.is_positive()
    }

    pub fn with_word(&self, word: TwistWord) -> Self {
        Relator {
            word,
            target: self.target.clone(),
            history: self.history.clone(),
        }
    }
}

/// Least cyclic rotation of the cyclically reduced word.
pub fn relator_normal_form(r: &Relator) -> Result<TwistWord> {
    if !r.is_identity_target() {
        return Err(Error::NonIdentityTarget);
    }
    let mut letters = r.word.reduced().letters;
    while letters.len() >= 2 && letters[0].cancels(&letters[letters.len() - 1]) {
        letters.pop();
        letters.remove(0);
    }
    let cfg = r.word.ambient();
    let n = letters.len();
    let cmp_rot = |a: usize, b: usize| {
        (0..n)
            .map(|i| cmp_letters(cfg, &letters[(a + i) % n], &letters[(b + i) % n]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    };
    let best = (0..n).fold(0, |best, k| {
        if cmp_rot(k, best) == Ordering::Less {
            k
        } else {
            best
        }
    });
    let mut rotated = letters[best..].to_vec();
    rotated.extend_from_slice(&letters[..best]);
    Ok(r.word.with_letters(rotated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{standard_chain_config, torus_config};

    fn torus() -> Arc<CurveConfig> {
        Arc::new(torus_config())
    }

    fn w(cfg: &Arc<CurveConfig>, s: &str) -> TwistWord {
        TwistWord::parse(Arc::clone(cfg), s).unwrap()
    }

    #[test]
    fn compose_reduces() {
        let t = torus();
        assert!(w(&t, "a").compose(&w(&t, "a^-1")).unwrap().is_empty());
        assert_eq!(w(&t, "a b").compose(&w(&t, "a")).unwrap().to_text(), "a b a");
        let s = Arc::new(standard_chain_config(1).unwrap());
        let period = w(&s, "c1 c2 c3^2 c2 c1");
        let a1 = period.compose(&period).unwrap();
        assert_eq!(a1.len(), 12);
    }

    #[test]
    fn compose_rejects_other_ambient() {
        let t = torus();
        let s = Arc::new(standard_chain_config(1).unwrap());
        assert_eq!(
            w(&t, "a").compose(&w(&s, "c1")).unwrap_err(),
            Error::AmbientMismatch
        );
    }

    #[test]
    fn invert_examples() {
        let t = torus();
        assert_eq!(w(&t, "a b").invert().to_text(), "b^-1 a^-1");
        assert!(TwistWord::empty(Arc::clone(&t)).invert().is_empty());
        let u = w(&t, "a b^2 (a . b) a^-1");
        assert_eq!(u.invert().invert(), u);
        assert!(u.compose(&u.invert()).unwrap().is_empty());
    }

    #[test]
    fn conjugate_absorbs() {
        let t = torus();
        let c = w(&t, "b").conjugate(&w(&t, "a")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.letters()[0].base, 1);
        assert_eq!(c.to_text(), "(a . b)");
        let u = w(&t, "a b a^2");
        assert_eq!(u.conjugate(&TwistWord::empty(Arc::clone(&t))).unwrap(), u);
        // conjugating a by a is a again
        assert_eq!(w(&t, "a").conjugate(&w(&t, "a^3")).unwrap().to_text(), "a");
    }

    #[test]
    fn conjugation_display_matches_collected_shape() {
        let cfg = Arc::new(crate::surface::chain_config(2, "b").unwrap());
        let c = w(&cfg, "b4 b5").conjugate(&w(&cfg, "b1^2 b2 b3")).unwrap();
        assert_eq!(c.to_text(), "(b1^2 b2 b3 . b4) (b1^2 b2 b3 . b5)");
    }

    #[test]
    fn power_examples() {
        let t = torus();
        assert_eq!(w(&t, "a b").power(6).len(), 12);
        assert!(w(&t, "a b").power(0).is_empty());
        assert_eq!(w(&t, "a b").power(-1).to_text(), "b^-1 a^-1");
        let s = Arc::new(standard_chain_config(2).unwrap());
        assert_eq!(w(&s, "c1 c2 c3 c4 c5").power(6).len(), 30);
    }

    #[test]
    fn text_round_trip() {
        let t = torus();
        for s in ["", "a", "a^2 b", "a^-3 b a", "(b a^-1 . b)^2 a", "(a . b)^-1"] {
            assert_eq!(w(&t, s).to_text(), s);
        }
        assert_eq!(w(&t, "(a^2 b)^3").to_text(), "a^2 b a^2 b a^2 b");
        assert_eq!(w(&t, "(b . a) ((a . b) . a)").to_text(), "(b . a) (a b . a)");
    }

    #[test]
    fn parse_errors() {
        let t = torus();
        assert!(matches!(TwistWord::parse(Arc::clone(&t), "a z"), Err(Error::Parse { .. })));
        assert!(matches!(TwistWord::parse(Arc::clone(&t), "(a b"), Err(Error::Parse { .. })));
        assert!(matches!(TwistWord::parse(Arc::clone(&t), "a^x"), Err(Error::Parse { .. })));
        assert!(matches!(TwistWord::parse(Arc::clone(&t), "a)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn normal_form_rotation() {
        let t = torus();
        let r1 = Relator::new(w(&t, "a a b a"));
        let r2 = Relator::new(w(&t, "a a a b"));
        assert_eq!(relator_normal_form(&r1).unwrap(), relator_normal_form(&r2).unwrap());
        let r3 = Relator::new(w(&t, "a b"));
        let r4 = Relator::new(w(&t, "b a"));
        assert_eq!(relator_normal_form(&r3).unwrap(), relator_normal_form(&r4).unwrap());
        let mut bad = r3.clone();
        bad.target = Target::Boundary(w(&t, "a"));
        assert_eq!(relator_normal_form(&bad).unwrap_err(), Error::NonIdentityTarget);
    }

    #[test]
    fn normal_form_cyclically_reduces() {
        let t = torus();
        let r = Relator::new(w(&t, "a b a^-1"));
        assert_eq!(relator_normal_form(&r).unwrap().to_text(), "b");
    }

    #[test]
    fn rebase_by_name() {
        let s = Arc::new(standard_chain_config(1).unwrap());
        let mut other = standard_chain_config(1).unwrap();
        other.set_name("copy");
        let other = Arc::new(other);
        let u = w(&s, "c1 (c2 . c3)");
        assert_eq!(u.rebase(Arc::clone(&other)).unwrap().to_text(), "c1 (c2 . c3)");
        assert!(u.rebase(torus()).is_err());
    }

    #[test]
    fn find_all_sliding() {
        let cfg = Arc::new(crate::surface::chain_config(2, "b").unwrap());
        let word = w(&cfg, "(b1 b2)^10");
        let pat = w(&cfg, "(b1 b2)^6");
        assert_eq!(word.find_all(&pat), vec![0, 2, 4, 6, 8]);
    }
}
