//! Free metabelian groups through the Magnus embedding.
//!
//! A group element is carried in wreath-product coordinates: one Laurent
//! polynomial per generator (the base part) plus an abelianization vector.
//! Generator `i` maps to the element with slot `i` equal to 1 and
//! abelianization the `i`-th unit vector, and products follow
//! `(b, t) (b', t') = (b + x^t b', t + t')`. The embedding is faithful, so
//! the word problem is decided by evaluation alone.
//!
//! Conjugation follows the convention `f^g = g^{-1} f g`. On base elements it
//! acts by translating supports, and the induced module action of a Laurent
//! polynomial `p` multiplies base coordinates by `p` with every variable
//! inverted; see [`WreathElement::module_exp`].

use std::fmt;

use num_traits::One;

use crate::laurent::{LaurentPoly, Monomial};
use crate::{Error, Int, Result};

/// One letter of a group word: a generator index (0-based) and a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// A word in the free generators and their inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(rank: usize, letters: Vec<Letter>) -> Result<GroupWord> {
        for l in &letters {
            if l.gen >= rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: l.gen + 1,
                });
            }
        }
        Ok(GroupWord { rank, letters })
    }

    pub fn empty(rank: usize) -> GroupWord {
        GroupWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// Parse `a..z` as generators 1..26 and `A..Z` as their inverses, plus
    /// `x3`/`X3` tokens for arbitrary rank. Whitespace is ignored.
    pub fn parse(rank: usize, input: &str) -> Result<GroupWord> {
        let mut letters = Vec::new();
        let mut chars = input.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let (gen, inverse) = match c {
                'x' | 'X' => {
                    let mut digits = String::new();
                    while matches!(chars.peek(), Some(d) if d.is_ascii_digit()) {
                        digits.push(chars.next().unwrap());
                    }
                    let idx: usize = digits
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator token x{digits}")))?;
                    if idx == 0 {
                        return Err(Error::Parse("generator indices start at 1".into()));
                    }
                    (idx - 1, c == 'X')
                }
                'a'..='z' => ((c as u8 - b'a') as usize, false),
                'A'..='Z' => ((c as u8 - b'A') as usize, true),
                other => return Err(Error::BadLetter(other)),
            };
            if gen >= rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: gen + 1,
                });
            }
            letters.push(Letter { gen, inverse });
        }
        Ok(GroupWord { rank, letters })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            rank: self.rank,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GroupWord {
            rank: self.rank,
            letters,
        })
    }

    /// The word `g_i^k` (empty for k = 0).
    pub fn generator_power(rank: usize, gen: usize, k: i64) -> Result<GroupWord> {
        if gen >= rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: gen + 1,
            });
        }
        Ok(GroupWord {
            rank,
            letters: std::iter::repeat_n(Letter {
                gen,
                inverse: k < 0,
            }, k.unsigned_abs() as usize)
            .collect(),
        })
    }

    /// Any word with the given abelianization (generator powers in order).
    pub fn from_abelianization(rank: usize, t: &[i64]) -> Result<GroupWord> {
        if t.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: t.len(),
            });
        }
        let mut w = GroupWord::empty(rank);
        for (i, &k) in t.iter().enumerate() {
            w = w.concat(&GroupWord::generator_power(rank, i, k)?)?;
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            if self.rank <= 26 {
                let base = if l.inverse { b'A' } else { b'a' };
                write!(f, "{}", (base + l.gen as u8) as char)?;
            } else {
                write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.gen + 1)?;
            }
        }
        Ok(())
    }
}

/// Normal form of a free metabelian group element in Magnus coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    rank: usize,
    base: Vec<LaurentPoly>,
    t: Vec<i64>,
}

impl WreathElement {
    pub fn identity(rank: usize) -> WreathElement {
        WreathElement {
            rank,
            base: vec![LaurentPoly::zero(rank); rank],
            t: vec![0; rank],
        }
    }

    pub fn generator(rank: usize, gen: usize) -> Result<WreathElement> {
        if gen >= rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: gen + 1,
            });
        }
        let mut e = WreathElement::identity(rank);
        e.base[gen] = LaurentPoly::one(rank);
        e.t[gen] = 1;
        Ok(e)
    }

    pub fn from_parts(rank: usize, base: Vec<LaurentPoly>, t: Vec<i64>) -> Result<WreathElement> {
        if base.len() != rank || t.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: base.len().max(t.len()),
            });
        }
        for b in &base {
            if b.var_count() != rank {
                return Err(Error::VarCountMismatch {
                    expected: rank,
                    got: b.var_count(),
                });
            }
        }
        Ok(WreathElement { rank, base, t })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> &[LaurentPoly] {
        &self.base
    }

    pub fn slot(&self, i: usize) -> &LaurentPoly {
        &self.base[i]
    }

    pub fn abelianization(&self) -> &[i64] {
        &self.t
    }

    fn check_rank(&self, other: &WreathElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        Ok(())
    }

    /// Evaluate a word left to right.
    pub fn eval(word: &GroupWord) -> WreathElement {
        let rank = word.rank();
        let mut acc = WreathElement::identity(rank);
        for l in word.letters() {
            let shift = Monomial(acc.t.clone());
            if !l.inverse {
                // (b, t) (e_i-slot 1, e_i)
                acc.base[l.gen] = acc.base[l.gen]
                    .add(&LaurentPoly::term(shift, Int::one()))
                    .expect("rank-consistent");
                acc.t[l.gen] += 1;
            } else {
                // (b, t) (-x^{-e_i} in slot i, -e_i)
                let mut m = shift;
                m.0[l.gen] -= 1;
                acc.base[l.gen] = acc.base[l.gen]
                    .add(&LaurentPoly::term(m, -Int::one()))
                    .expect("rank-consistent");
                acc.t[l.gen] -= 1;
            }
        }
        acc
    }

    pub fn mul(&self, other: &WreathElement) -> Result<WreathElement> {
        self.check_rank(other)?;
        let shift = Monomial(self.t.clone());
        let base = self
            .base
            .iter()
            .zip(&other.base)
            .map(|(a, b)| a.add(&b.shift(&shift)?))
            .collect::<Result<Vec<_>>>()?;
        let t = self.t.iter().zip(&other.t).map(|(a, b)| a + b).collect();
        Ok(WreathElement {
            rank: self.rank,
            base,
            t,
        })
    }

    pub fn inv(&self) -> WreathElement {
        let neg_t = Monomial(self.t.iter().map(|a| -a).collect());
        let base = self
            .base
            .iter()
            .map(|b| b.neg().shift(&neg_t).expect("rank-consistent"))
            .collect();
        WreathElement {
            rank: self.rank,
            base,
            t: neg_t.0,
        }
    }

    /// `self^g = g^{-1} self g`.
    pub fn conj(&self, g: &WreathElement) -> Result<WreathElement> {
        g.inv().mul(self)?.mul(g)
    }

    /// `[e1, e2] = e1^{-1} e2^{-1} e1 e2`.
    pub fn commutator(e1: &WreathElement, e2: &WreathElement) -> Result<WreathElement> {
        e1.inv().mul(&e2.inv())?.mul(e1)?.mul(e2)
    }

    pub fn pow(&self, k: i64) -> Result<WreathElement> {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = WreathElement::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.t.iter().all(|&c| c == 0) && self.base.iter().all(|b| b.is_zero())
    }

    /// Membership in the derived subgroup: trivial abelianization.
    pub fn in_derived(&self) -> bool {
        self.t.iter().all(|&c| c == 0)
    }

    /// The classical image criterion for the Magnus embedding:
    /// sum of slot_i * (x_i - 1) equals x^t - 1.
    pub fn in_image(&self) -> bool {
        let mut lhs = LaurentPoly::zero(self.rank);
        for (i, b) in self.base.iter().enumerate() {
            let factor = LaurentPoly::var(self.rank, i)
                .sub(&LaurentPoly::one(self.rank))
                .expect("rank-consistent");
            lhs = lhs.add(&b.mul(&factor).unwrap()).unwrap();
        }
        let rhs = LaurentPoly::term(Monomial(self.t.clone()), Int::one())
            .sub(&LaurentPoly::one(self.rank))
            .unwrap();
        lhs == rhs
    }

    /// Module action of a Laurent polynomial on a base element: conjugating by
    /// a word with abelianization `q` multiplies base coordinates by `x^{-q}`,
    /// so the polynomial acts with its variables inverted.
    pub fn module_exp(&self, p: &LaurentPoly) -> Result<WreathElement> {
        if !self.in_derived() {
            return Err(Error::NotInDerived);
        }
        if p.var_count() != self.rank {
            return Err(Error::VarCountMismatch {
                expected: self.rank,
                got: p.var_count(),
            });
        }
        let action = p.invert_vars();
        let base = self
            .base
            .iter()
            .map(|b| b.mul(&action))
            .collect::<Result<Vec<_>>>()?;
        Ok(WreathElement {
            rank: self.rank,
            base,
            t: self.t.clone(),
        })
    }

    /// The derived-subgroup generator indexed by `i < j` (0-based) and a
    /// module monomial `q`: the image of `[a_i, a_j]` conjugated by any word
    /// with abelianization `q`.
    pub fn derived_gen(rank: usize, i: usize, j: usize, q: &Monomial) -> Result<WreathElement> {
        if i >= j {
            return Err(Error::IndexOrder { i: i + 1, j: j + 1 });
        }
        if j >= rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: j + 1,
            });
        }
        if q.len() != rank {
            return Err(Error::VarCountMismatch {
                expected: rank,
                got: q.len(),
            });
        }
        // x^{-q-e_i-e_j} ((1 - x_j) in slot i, (x_i - 1) in slot j)
        let mut shift = q.neg();
        shift.0[i] -= 1;
        shift.0[j] -= 1;
        let one = LaurentPoly::one(rank);
        let xi = LaurentPoly::var(rank, i);
        let xj = LaurentPoly::var(rank, j);
        let mut base = vec![LaurentPoly::zero(rank); rank];
        base[i] = one.sub(&xj)?.shift(&shift)?;
        base[j] = xi.sub(&one)?.shift(&shift)?;
        Ok(WreathElement {
            rank,
            base,
            t: vec![0; rank],
        })
    }

    /// The Jacobi combination
    /// `(1-x_i) e_{jk} - (1-x_j) e_{ik} + (1-x_k) e_{ij}`, assembled through
    /// the module action on derived generators. It is a relation, so the
    /// result is the identity.
    pub fn jacobi(rank: usize, i: usize, j: usize, k: usize) -> Result<WreathElement> {
        if !(i < j && j < k) {
            return Err(Error::IndexOrder {
                i: i + 1,
                j: k + 1,
            });
        }
        let one = LaurentPoly::one(rank);
        let term = |a: usize, b: usize, var: usize, negate: bool| -> Result<WreathElement> {
            let mut factor = one.sub(&LaurentPoly::var(rank, var))?;
            if negate {
                factor = factor.neg();
            }
            WreathElement::derived_gen(rank, a, b, &Monomial::zero(rank))?.module_exp(&factor)
        };
        let t1 = term(j, k, i, false)?;
        let t2 = term(i, k, j, true)?;
        let t3 = term(i, j, k, false)?;
        t1.mul(&t2)?.mul(&t3)
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t=(")?;
        for (i, c) in self.t.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ") slots=[")?;
        for (i, b) in self.base.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &str) -> GroupWord {
        GroupWord::parse(rank, s).unwrap()
    }

    fn ev(rank: usize, s: &str) -> WreathElement {
        WreathElement::eval(&w(rank, s))
    }

    fn p2(s: &str) -> LaurentPoly {
        LaurentPoly::parse(2, s).unwrap()
    }

    #[test]
    fn eval_generators() {
        let a = ev(2, "a");
        assert_eq!(a.slot(0), &LaurentPoly::one(2));
        assert!(a.slot(1).is_zero());
        assert_eq!(a.abelianization(), &[1, 0]);

        let ab = ev(2, "ab");
        assert_eq!(ab.slot(0), &LaurentPoly::one(2));
        assert_eq!(ab.slot(1), &p2("x1"));
        assert_eq!(ab.abelianization(), &[1, 1]);

        assert!(ev(2, "aA").is_identity());
        assert!(ev(2, "Aa").is_identity());
    }

    #[test]
    fn eval_is_homomorphism() {
        let u = w(3, "abAcB");
        let v = w(3, "cabA");
        let uv = u.concat(&v).unwrap();
        assert_eq!(
            WreathElement::eval(&uv),
            WreathElement::eval(&u)
                .mul(&WreathElement::eval(&v))
                .unwrap()
        );
    }

    #[test]
    fn commutator_closed_form() {
        let a = ev(2, "a");
        let b = ev(2, "b");
        let c = WreathElement::commutator(&a, &b).unwrap();
        assert_eq!(c, ev(2, "ABab"));
        assert_eq!(c.slot(0), &p2("x1^-1*x2^-1 - x1^-1"));
        assert_eq!(c.slot(1), &p2("x2^-1 - x1^-1*x2^-1"));
        assert_eq!(c.abelianization(), &[0, 0]);
        assert!(c.in_derived());
        assert!(!c.is_identity());
    }

    #[test]
    fn group_axioms() {
        let e = ev(3, "abcABC");
        assert_eq!(e.inv().inv(), e);
        assert!(e.mul(&e.inv()).unwrap().is_identity());
        let id = WreathElement::identity(3);
        assert_eq!(e.conj(&id).unwrap(), e);
        assert!(e.mul(&ev(2, "a")).is_err());
    }

    #[test]
    fn metabelian_law() {
        // [[u, v], [w, z]] = 1 for arbitrary subwords.
        let u = ev(2, "ab");
        let v = ev(2, "aB");
        let s = ev(2, "ba");
        let z = ev(2, "abA");
        let inner1 = WreathElement::commutator(&u, &v).unwrap();
        let inner2 = WreathElement::commutator(&s, &z).unwrap();
        assert!(WreathElement::commutator(&inner1, &inner2)
            .unwrap()
            .is_identity());
        // A fixed relator instance with longer subwords.
        let g1 = ev(2, "a");
        let g2 = ev(2, "b");
        let h1 = ev(2, "aab");
        let h2 = ev(2, "ab");
        let lhs = WreathElement::commutator(
            &WreathElement::commutator(&g1, &g2).unwrap(),
            &WreathElement::commutator(&h1, &h2).unwrap(),
        )
        .unwrap();
        assert!(lhs.is_identity());
    }

    #[test]
    fn image_criterion() {
        assert!(ev(2, "a").in_image());
        assert!(ev(2, "ABab").in_image());
        assert!(WreathElement::identity(2).in_image());
        let fake = WreathElement::from_parts(
            2,
            vec![LaurentPoly::one(2), LaurentPoly::zero(2)],
            vec![0, 0],
        )
        .unwrap();
        assert!(!fake.in_image());
    }

    #[test]
    fn derived_gen_matches_conj_oracle() {
        // q = 0 reduces to the plain commutator.
        let c = WreathElement::commutator(&ev(2, "a"), &ev(2, "b")).unwrap();
        let d = WreathElement::derived_gen(2, 0, 1, &Monomial::zero(2)).unwrap();
        assert_eq!(c, d);
        // General q: conjugation by any word with abelianization q.
        for (rank, i, j, q) in [
            (2, 0, 1, vec![2, -1]),
            (3, 1, 2, vec![0, 1, 1]),
            (3, 0, 2, vec![-1, 2, 0]),
            (4, 1, 3, vec![1, 0, -2, 1]),
        ] {
            let ai = WreathElement::generator(rank, i).unwrap();
            let aj = WreathElement::generator(rank, j).unwrap();
            let c = WreathElement::commutator(&ai, &aj).unwrap();
            let g = WreathElement::eval(&GroupWord::from_abelianization(rank, &q).unwrap());
            let expected = c.conj(&g).unwrap();
            let got = WreathElement::derived_gen(rank, i, j, &Monomial(q)).unwrap();
            assert_eq!(got, expected);
        }
        assert!(WreathElement::derived_gen(3, 1, 1, &Monomial::zero(3)).is_err());
        assert!(WreathElement::derived_gen(3, 2, 1, &Monomial::zero(3)).is_err());
    }

    #[test]
    fn derived_gen_rank3_closed_form() {
        let d = WreathElement::derived_gen(3, 1, 2, &Monomial::zero(3)).unwrap();
        let p3 = |s: &str| LaurentPoly::parse(3, s).unwrap();
        assert_eq!(d.slot(1), &p3("x2^-1*x3^-1 - x2^-1"));
        assert_eq!(d.slot(2), &p3("x3^-1 - x2^-1*x3^-1"));
        assert!(d.slot(0).is_zero());
        assert!(d.in_derived());
    }

    #[test]
    fn module_exp_matches_conj_product() {
        let c = WreathElement::commutator(&ev(2, "a"), &ev(2, "b")).unwrap();
        assert_eq!(c.module_exp(&LaurentPoly::one(2)).unwrap(), c);
        let lhs = c.module_exp(&p2("1 + x1")).unwrap();
        let rhs = c.mul(&c.conj(&ev(2, "a")).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(ev(2, "a").module_exp(&p2("1")).is_err());
    }

    #[test]
    fn commutator_power_formula() {
        // [a^m, b^n] = [a,b]^{(1+a)^{m-1} (1+b)^{n-1}} for m = n = 2.
        let a = ev(2, "a");
        let b = ev(2, "b");
        let c = WreathElement::commutator(&a, &b).unwrap();
        let lhs = WreathElement::commutator(&a.pow(2).unwrap(), &b.pow(2).unwrap()).unwrap();
        let exp = p2("1 + x1").mul(&p2("1 + x2")).unwrap();
        assert_eq!(lhs, c.module_exp(&exp).unwrap());
    }

    #[test]
    fn jacobi_relations_hold() {
        for rank in 3..=5 {
            for i in 0..rank {
                for j in i + 1..rank {
                    for k in j + 1..rank {
                        let e = WreathElement::jacobi(rank, i, j, k).unwrap();
                        assert!(e.is_identity(), "J({i},{j},{k}) at rank {rank}");
                    }
                }
            }
        }
        assert!(WreathElement::jacobi(3, 0, 2, 1).is_err());
    }

    #[test]
    fn augmentation_tracks_exponent_sum() {
        let word = w(3, "abAcBcaC");
        let e = WreathElement::eval(&word);
        let mut sums = [0i64; 3];
        for l in word.letters() {
            sums[l.gen] += if l.inverse { -1 } else { 1 };
        }
        for (i, &s) in sums.iter().enumerate() {
            assert_eq!(e.slot(i).augmentation(), Int::from(s));
            assert_eq!(e.abelianization()[i], s);
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w(3, "x1x2X3"), w(3, "abC"));
        assert!(GroupWord::parse(2, "c").is_err());
        assert!(GroupWord::parse(2, "1").is_err());
        let word = w(4, "abcdDCBA");
        assert!(WreathElement::eval(&word).is_identity());
        assert_eq!(w(2, "aB").inverse(), w(2, "bA"));
        assert_eq!(w(2, "ab").to_string(), "ab");
    }
}
