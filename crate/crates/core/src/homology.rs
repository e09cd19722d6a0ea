//! Exact action of twist words on `H_1(Σ_g; Z)`.
//!
//! A twist along a curve of class `v` acts as the transvection
//! `x -> x + <x, v> v`, i.e. the matrix `I + v (Jv)^T` where
//! `(Jv)_{x_i} = v_{y_i}` and `(Jv)_{y_i} = -v_{x_i}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::surface::CurveConfig;
use crate::word::{Generator, Relator, Twist, TwistWord};

/// Square matrix with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `M v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.data[i * n + j] * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// `self += s · u w^T`.
    fn add_rank_one(&mut self, s: i8, u: &[BigInt], w: &[BigInt]) {
        let n = self.n;
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w[j].is_zero() {
                    continue;
                }
                let t = &u[i] * &w[j];
                if s > 0 {
                    self.data[i * n + j] += t;
                } else {
                    self.data[i * n + j] -= t;
                }
            }
        }
    }

    /// Rows as decimal strings.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The standard symplectic form `J` with `<u, v> = u^T J v`.
pub fn standard_form(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zero(2 * g);
    for i in 0..g {
        j.set(i, g + i, BigInt::one());
        j.set(g + i, i, -BigInt::one());
    }
    j
}

/// `<u, v>` for big-integer vectors.
pub fn pairing_big(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let g = u.len() / 2;
    (0..g)
        .map(|i| &u[i] * &v[g + i] - &u[g + i] * &v[i])
        .sum()
}

/// The covector `x -> <x, v>`.
fn dual(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.len() / 2;
    let mut out = vec![BigInt::zero(); v.len()];
    for i in 0..g {
        out[i] = v[g + i].clone();
        out[g + i] = -&v[i];
    }
    out
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Matrix of the twist along a curve of class `cls`.
pub fn transvection(cls: &[i64]) -> Result<IntMatrix> {
    if cls.len() % 2 != 0 {
        return Err(Error::ClassLength {
            curve: "<class>".into(),
            got: cls.len(),
            expected: cls.len() + 1,
        });
    }
    let v = to_big(cls);
    let mut m = IntMatrix::identity(cls.len());
    m.add_rank_one(1, &v, &dual(&v));
    Ok(m)
}

/// Applies `t^s` along class `v` to the vector `x` in place.
fn twist_vector(x: &mut [BigInt], v: &[BigInt], s: i8) {
    let c = pairing_big(x, v);
    if c.is_zero() {
        return;
    }
    for (xi, vi) in x.iter_mut().zip(v) {
        if s > 0 {
            *xi += &c * vi;
        } else {
            *xi -= &c * vi;
        }
    }
}

fn base_class(cfg: &CurveConfig, curve: usize) -> Result<Vec<BigInt>> {
    let c = cfg.curve(curve);
    let expected = cfg.surface().rank();
    if c.class.len() != expected {
        return Err(Error::ClassLength {
            curve: c.id.clone(),
            got: c.class.len(),
            expected,
        });
    }
    Ok(to_big(&c.class))
}

/// Homology class of `w(c)` for the plain word `w`.
pub fn image_class(cfg: &CurveConfig, conjugator: &[Twist], base: usize) -> Result<Vec<BigInt>> {
    let mut v = base_class(cfg, base)?;
    for t in conjugator.iter().rev() {
        let u = base_class(cfg, t.curve)?;
        twist_vector(&mut v, &u, t.sign);
    }
    Ok(v)
}

/// Class of the curve a (possibly conjugated) letter twists along.
pub fn letter_class(cfg: &CurveConfig, g: &Generator) -> Result<Vec<BigInt>> {
    image_class(cfg, g.conjugator(), g.base)
}

/// Product of the letter matrices in word order.
pub fn word_to_matrix(w: &TwistWord) -> Result<IntMatrix> {
    let cfg = w.ambient();
    let mut m = IntMatrix::identity(cfg.surface().rank());
    for g in w.letters() {
        let v = letter_class(cfg, g)?;
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        // M (I + s v (Jv)^T) = M + s (M v)(Jv)^T
        let mv = m.apply(&v);
        m.add_rank_one(g.sign, &mv, &dual(&v));
    }
    Ok(m)
}

/// Outcome of the homology check; the witness is the image when it is not
/// the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyCheck {
    pub trivial: bool,
    pub witness: Option<IntMatrix>,
}

pub fn is_homologically_trivial(r: &Relator) -> Result<HomologyCheck> {
    if !r.is_identity_target() {
        return Err(Error::NonIdentityTarget);
    }
    let m = word_to_matrix(&r.word)?;
    Ok(if m.is_identity() {
        HomologyCheck {
            trivial: true,
            witness: None,
        }
    } else {
        HomologyCheck {
            trivial: false,
            witness: Some(m),
        }
    })
}

/// `M^T J M = J`.
pub fn symplectic_check(m: &IntMatrix) -> bool {
    if m.dim() % 2 != 0 {
        return false;
    }
    let j = standard_form(m.dim() / 2);
    m.transpose().mul(&j).mul(m) == j
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::surface::{standard_chain_config, torus_config};

    fn torus_word(s: &str) -> TwistWord {
        TwistWord::parse(Arc::new(torus_config()), s).unwrap()
    }

    #[test]
    fn zero_class_is_identity() {
        assert!(transvection(&[0, 0, 0, 0]).unwrap().is_identity());
    }

    #[test]
    fn genus_one_transvection() {
        // y1 = (0, 1): x1 -> x1 + <x1, y1> y1 = x1 + y1
        let m = transvection(&[0, 1]).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]));
        let m2 = m.mul(&m);
        assert_eq!(m2, IntMatrix::from_rows(&[vec![1, 0], vec![2, 1]]));
        assert_eq!(word_to_matrix(&torus_word("a^2")).unwrap(), m2);
    }

    #[test]
    fn odd_length_class_rejected() {
        assert!(transvection(&[1, 0, 0]).is_err());
    }

    #[test]
    fn torus_relations() {
        assert!(word_to_matrix(&torus_word("(a b)^6")).unwrap().is_identity());
        assert!(word_to_matrix(&torus_word("(a a b a)^3")).unwrap().is_identity());
        // (a b)^3 is -I
        assert_eq!(
            word_to_matrix(&torus_word("(a b)^3")).unwrap(),
            IntMatrix::identity(2).neg()
        );
    }

    #[test]
    fn printed_c1_is_not_trivial() {
        // a^2 b has trace 0, so it has order 4 and (a^2 b)^3 = (a^2 b)^-1.
        let m = word_to_matrix(&torus_word("(a^2 b)^3")).unwrap();
        assert!(!m.is_identity());
        assert_eq!(m, word_to_matrix(&torus_word("(a^2 b)^-1")).unwrap());
        assert_eq!(m, IntMatrix::from_rows(&[vec![-1, 1], vec![-2, 1]]));
        let r = Relator::new(torus_word("(a^2 b)^3"));
        let check = is_homologically_trivial(&r).unwrap();
        assert!(!check.trivial);
        assert_eq!(check.witness, Some(m));
    }

    #[test]
    fn empty_word_trivial() {
        let r = Relator::new(torus_word(""));
        assert!(is_homologically_trivial(&r).unwrap().trivial);
    }

    #[test]
    fn conjugated_letter_matches_matrix_conjugation() {
        let cfg = Arc::new(standard_chain_config(2).unwrap());
        let p = TwistWord::parse(Arc::clone(&cfg), "c2 c3^-1 c1").unwrap();
        let c = TwistWord::parse(Arc::clone(&cfg), "c4").unwrap();
        let conj = c.conjugate(&p).unwrap();
        let lhs = word_to_matrix(&conj).unwrap();
        let pm = word_to_matrix(&p).unwrap();
        let rhs = pm
            .mul(&word_to_matrix(&c).unwrap())
            .mul(&word_to_matrix(&p.invert()).unwrap());
        assert_eq!(lhs, rhs);
        assert!(symplectic_check(&lhs));
    }

    #[test]
    fn symplectic_sanity() {
        assert!(symplectic_check(&IntMatrix::identity(4)));
        let mut m = word_to_matrix(&torus_word("a b^2 a^-1")).unwrap();
        assert!(symplectic_check(&m));
        let v = m.get(0, 1) + 1;
        m.set(0, 1, v);
        assert!(!symplectic_check(&m));
    }
}
