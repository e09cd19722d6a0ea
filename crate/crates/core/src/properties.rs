use std::sync::Arc;

use num_rational::Rational64;
use proptest::prelude::*;

use crate::homology::{standard_form, word_to_matrix, IntMatrix};
use crate::invariants::{report, FiberCounts};
use crate::library::{builtin, family, match_sites, substitute, Direction};
use crate::rewrite::{apply_move, power_collect, state_hash, Move};
use crate::surface::{chain_config, standard_chain_config, CurveConfig};
use crate::word::{relator_normal_form, Generator, Relator, Twist, TwistWord};

fn g2() -> Arc<CurveConfig> {
    Arc::new(standard_chain_config(2).unwrap())
}

fn twist() -> impl Strategy<Value = Twist> {
    (0usize..5, prop::bool::ANY).prop_map(|(c, pos)| Twist::new(c, if pos { 1 } else { -1 }))
}

fn letter() -> impl Strategy<Value = Generator> {
    (0usize..5, prop::bool::ANY, prop::collection::vec(twist(), 0..4))
        .prop_map(|(base, pos, conj)| Generator::new(base, if pos { 1 } else { -1 }, conj))
}

fn word() -> impl Strategy<Value = TwistWord> {
    prop::collection::vec(letter(), 0..12).prop_map(|ls| TwistWord::from_letters(g2(), ls).unwrap())
}

fn plain_positive_word() -> impl Strategy<Value = TwistWord> {
    prop::collection::vec(0usize..5, 1..16)
        .prop_map(|bs| TwistWord::from_letters(g2(), bs.into_iter().map(|b| Generator::plain(b, 1)).collect()).unwrap())
}

fn symplectic(m: &IntMatrix) -> bool {
    let j = standard_form(m.dim() / 2);
    m.transpose().mul(&j).mul(m) == j
}

fn any_move(len: usize) -> impl Strategy<Value = Move> {
    let at = 0..len.max(2) - 1;
    prop_oneof![
        at.clone().prop_map(|at| Move::Commute { at }),
        at.clone().prop_map(|at| Move::BraidForward { at }),
        at.clone().prop_map(|at| Move::BraidBackward { at }),
        at.clone().prop_map(|at| Move::HurwitzRight { at }),
        at.prop_map(|at| Move::HurwitzLeft { at }),
        (-20i64..20).prop_map(|steps| Move::Rotate { steps }),
        (1u32..=3, prop::bool::ANY).prop_map(|(c, pos)| Move::GlobalConjugate {
            by: if pos { format!("c{c}") } else { format!("c{c}^-1") }
        }),
    ]
}

proptest! {
    #[test]
    fn text_round_trip(w in word()) {
        let back = TwistWord::parse(Arc::clone(w.ambient()), &w.to_text()).unwrap();
        prop_assert_eq!(back, w.reduced());
    }

    #[test]
    fn inverse_word_cancels(w in word()) {
        let both = w.compose(&w.invert()).unwrap();
        prop_assert!(word_to_matrix(&both).unwrap().is_identity());
        prop_assert!(both.reduced().is_empty());
    }

    #[test]
    fn images_are_symplectic(w in word()) {
        prop_assert!(symplectic(&word_to_matrix(&w).unwrap()));
    }

    #[test]
    fn hurwitz_preserves_matrix(w in plain_positive_word(), at in 0usize..15, right in prop::bool::ANY) {
        prop_assume!(at + 1 < w.len());
        let r = Relator::new(w.clone());
        let mv = if right { Move::HurwitzRight { at } } else { Move::HurwitzLeft { at } };
        let out = apply_move(&r, &mv).unwrap();
        prop_assert_eq!(word_to_matrix(&out.word).unwrap(), word_to_matrix(&w).unwrap());
    }

    #[test]
    fn moves_invert((g, name, mv) in (1u32..=3, prop::sample::select(vec!["A", "B", "C", "D"]))
        .prop_flat_map(|(g, name)| {
            let len = family(name, g, 1).unwrap().word.len();
            (Just(g), Just(name), any_move(len))
        }))
    {
        let start = family(name, g, 1).unwrap();
        let ambient = Arc::clone(start.word.ambient());
        if let Ok(next) = apply_move(&start, &mv) {
            let back = apply_move(&next, &mv.inverse(&ambient).unwrap()).unwrap();
            prop_assert_eq!(&back.word, &start.word);
            prop_assert_eq!(word_to_matrix(&next.word).unwrap(), word_to_matrix(&start.word).unwrap());
        }
    }

    #[test]
    fn normal_form_ignores_rotation(w in plain_positive_word(), k in 0i64..20) {
        let r = Relator::new(w);
        let rotated = apply_move(&r, &Move::Rotate { steps: k }).unwrap();
        prop_assert_eq!(relator_normal_form(&r).unwrap(), relator_normal_form(&rotated).unwrap());
    }

    #[test]
    fn hash_tracks_text(a in word(), b in word()) {
        prop_assert_eq!(state_hash(&a) == state_hash(&b), a.to_text() == b.to_text());
    }

    #[test]
    fn power_identity_holds(m in 2usize..=7, k in 1usize..7, start in 0usize..6) {
        prop_assume!(k < m && start + m <= 9);
        let cfg = Arc::new(chain_config(4, "a").unwrap());
        let names: Vec<String> = (start + 1..=start + m).map(|i| format!("a{i}")).collect();
        let chain: Vec<&str> = names.iter().map(String::as_str).collect();
        let (l, r) = power_collect(&cfg, &chain, k).unwrap();
        prop_assert_eq!(l.len(), r.len());
        prop_assert_eq!(word_to_matrix(&l).unwrap(), word_to_matrix(&r).unwrap());
    }

    #[test]
    fn invariant_identities(g in 1u32..=10, s0 in 0u64..200, seps in prop::collection::vec((1u32..=5, 0u64..4), 0..3), triv in 0u64..4) {
        let mut fc = FiberCounts::nonseparating(s0).with_trivial(triv);
        for (h, c) in seps {
            if h <= g / 2 {
                fc = fc.with_separating(h, c);
            }
        }
        let gi = i64::from(g);
        let mut sigma = Rational64::new(-(gi + 1), 2 * gi + 1) * s0 as i64 - triv as i64;
        for (&h, &c) in &fc.s {
            let h = i64::from(h);
            sigma += (Rational64::new(4 * h * (gi - h), 2 * gi + 1) - 1) * c as i64;
        }
        let e = 4 - 4 * gi + fc.total() as i64;
        match report(g, &fc, false) {
            Ok(r) => {
                prop_assert!(sigma.is_integer());
                prop_assert_eq!((r.e, r.sigma), (e, sigma.to_integer()));
                prop_assert_eq!(r.c1sq, 2 * r.e + 3 * r.sigma);
                prop_assert_eq!(4 * r.chi, r.e + r.sigma);
                let b = report(g, &fc, true).unwrap();
                prop_assert_eq!((b.e, b.sigma), (r.e - triv as i64, r.sigma + triv as i64));
            }
            Err(_) => prop_assert!(!sigma.is_integer() || (e + sigma.to_integer()) % 4 != 0),
        }
    }

    #[test]
    fn substitution_round_trip(reps in 1usize..4, pad in prop::collection::vec(0usize..2, 0..6)) {
        let rel = builtin("star_torus", 0).unwrap();
        let amb = Arc::clone(rel.ambient());
        let mut text = String::new();
        for p in &pad {
            text.push_str(if *p == 0 { "a " } else { "b " });
        }
        text.push_str(&format!("(a a b a)^{}", 3 * reps));
        let r = Relator::new(TwistWord::parse(amb, &text).unwrap());
        let sites = match_sites(&r, &rel);
        prop_assert!(!sites.is_empty());
        for s in sites {
            let there = substitute(&r, &rel, s.at, s.direction).unwrap();
            prop_assert_eq!(word_to_matrix(&there.word).unwrap(), word_to_matrix(&r.word).unwrap());
            let back = substitute(&there, &rel, s.at, Direction::Reverse).unwrap();
            prop_assert_eq!(&back.word, &r.word);
        }
    }
}
