//! Bi-invariant orders on free metabelian groups in Magnus coordinates.
//!
//! The quotient-leading family compares the abelianization through a form
//! tower first and falls back to a stack of module-invariant stages on the
//! derived subgroup: an exact character, an integer linear functional, or the
//! leading-coefficient rule that reads the coefficient vector at the largest
//! monomial of the combined base support. The non-convex family realizes the
//! rank-3-and-up construction in which the derived subgroup fails to be
//! convex: a distinguished generator is squeezed between the kernel and the
//! positive set of a functional on the derived subgroup.

use num_traits::Zero;

use crate::latord::FormTower;
use crate::laurent::Monomial;
use crate::magnus::{GroupWord, WreathElement};
use crate::realalg::{elem_sign, QAlphaElem, RealAlgebraic};
use crate::{Error, Int, Rat, Result, Sign};

/// One stage of a derived-subgroup order.
#[derive(Clone, Debug, PartialEq)]
pub enum DerivedStage {
    /// Sign of the coefficient vector at the leading monomial.
    LeadingCoeff {
        q_order: FormTower,
        coeff_order: FormTower,
    },
    /// Sign of an exact character: each slot coefficient is weighted by a
    /// positive field element raised to the monomial's exponents.
    Character {
        alpha: Option<RealAlgebraic>,
        chi: Vec<QAlphaElem>,
        weights: Vec<Rat>,
    },
    /// Sign of an integer functional `sum_i sum_q slot_i[q] (d_i + A_i . q)`,
    /// defined on the derived submodule only.
    LinearFunctional {
        matrix: Vec<Vec<i64>>,
        offsets: Vec<i64>,
    },
}

impl DerivedStage {
    fn validate(&self, rank: usize) -> Result<()> {
        match self {
            DerivedStage::LeadingCoeff {
                q_order,
                coeff_order,
            } => {
                if q_order.dim() != rank || coeff_order.dim() != rank {
                    return Err(Error::Config(format!(
                        "leading-coefficient towers must have dimension {rank}"
                    )));
                }
            }
            DerivedStage::Character {
                alpha,
                chi,
                weights,
            } => {
                if chi.len() != rank || weights.len() != rank {
                    return Err(Error::Config(format!(
                        "character needs {rank} values and weights"
                    )));
                }
                for c in chi {
                    if elem_sign(alpha.as_ref(), c)? != Sign::Pos {
                        return Err(Error::Config(
                            "character values must be strictly positive".into(),
                        ));
                    }
                }
            }
            DerivedStage::LinearFunctional { matrix, offsets } => {
                if matrix.len() != rank
                    || offsets.len() != rank
                    || matrix.iter().any(|row| row.len() != rank)
                {
                    return Err(Error::Config(format!(
                        "linear functional needs a {rank}x{rank} matrix and {rank} offsets"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluate the stage on a base element; zero passes to the next stage.
    fn sign(&self, e: &WreathElement) -> Result<Sign> {
        match self {
            DerivedStage::LeadingCoeff {
                q_order,
                coeff_order,
            } => leading_coeff_sign(q_order, coeff_order, e),
            DerivedStage::Character {
                alpha,
                chi,
                weights,
            } => character_sign(alpha.as_ref(), chi, weights, e),
            DerivedStage::LinearFunctional { matrix, offsets } => {
                Ok(Sign::of_int(&linear_functional(matrix, offsets, e)?))
            }
        }
    }
}

/// Leading-coefficient rule: find the maximal monomial of the combined slot
/// support under `q_order`, then order the coefficient vector there.
pub fn leading_coeff_sign(
    q_order: &FormTower,
    coeff_order: &FormTower,
    e: &WreathElement,
) -> Result<Sign> {
    let mut best: Option<&Monomial> = None;
    for slot in e.base() {
        for m in slot.support() {
            match best {
                None => best = Some(m),
                Some(b) => {
                    if m != b {
                        let diff: Vec<Int> = m
                            .0
                            .iter()
                            .zip(&b.0)
                            .map(|(x, y)| Int::from(x - y))
                            .collect();
                        match q_order.sign(&diff)? {
                            Sign::Pos => best = Some(m),
                            Sign::Neg => {}
                            Sign::Zero => return Err(Error::NotTotal),
                        }
                    }
                }
            }
        }
    }
    let Some(q) = best else {
        return Ok(Sign::Zero);
    };
    let coeffs: Vec<Int> = e.base().iter().map(|s| s.coeff(q)).collect();
    coeff_order.sign(&coeffs)
}

fn character_sign(
    alpha: Option<&RealAlgebraic>,
    chi: &[QAlphaElem],
    weights: &[Rat],
    e: &WreathElement,
) -> Result<Sign> {
    let mul = |a: &QAlphaElem, b: &QAlphaElem| -> QAlphaElem {
        match alpha {
            Some(al) => al.qa_mul(a, b),
            None => QAlphaElem::from_poly_unchecked(a.rep().mul(b.rep())),
        }
    };
    let pow = |base: &QAlphaElem, k: i64| -> Result<QAlphaElem> {
        match alpha {
            Some(al) => al.qa_pow(base, k),
            None => {
                let r = base.as_rat().ok_or(Error::Config(
                    "character value must be rational without an ambient algebraic".into(),
                ))?;
                if r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let mut out = Rat::new(Int::from(1), Int::from(1));
                let b = if k < 0 { r.recip() } else { r };
                for _ in 0..k.unsigned_abs() {
                    out *= &b;
                }
                Ok(QAlphaElem::from_rat(out))
            }
        }
    };
    let mut acc = QAlphaElem::zero();
    for (i, slot) in e.base().iter().enumerate() {
        if weights[i].is_zero() {
            continue;
        }
        for (q, c) in slot.terms() {
            let mut term = QAlphaElem::from_rat(&weights[i] * Rat::from_integer(c.clone()));
            for (k, &exp) in q.0.iter().enumerate() {
                if exp != 0 {
                    term = mul(&term, &pow(&chi[k], exp)?);
                }
            }
            acc = QAlphaElem::from_poly_unchecked(acc.rep().add(term.rep()));
        }
    }
    let acc = match alpha {
        Some(al) => al.reduce(acc.rep().clone()),
        None => acc,
    };
    elem_sign(alpha, &acc)
}

/// Integer linear functional on the derived submodule.
fn linear_functional(matrix: &[Vec<i64>], offsets: &[i64], e: &WreathElement) -> Result<Int> {
    if !e.in_image() {
        return Err(Error::StageDomain);
    }
    let mut acc = Int::zero();
    for (i, slot) in e.base().iter().enumerate() {
        for (q, c) in slot.terms() {
            let mut w = Int::from(offsets[i]);
            for (k, &exp) in q.0.iter().enumerate() {
                w += Int::from(matrix[i][k]) * Int::from(exp);
            }
            acc += c * w;
        }
    }
    Ok(acc)
}

/// Sign of a base element under a stage stack; the first nonzero stage wins.
pub fn derived_sign(stages: &[DerivedStage], e: &WreathElement) -> Result<Sign> {
    if !e.in_derived() {
        return Err(Error::NotInDerived);
    }
    for stage in stages {
        let s = stage.sign(e)?;
        if s != Sign::Zero {
            return Ok(s);
        }
    }
    Ok(Sign::Zero)
}

/// A quotient-leading bi-invariant order: the abelianization decides through
/// a form tower, and derived-subgroup elements fall to the stage stack.
#[derive(Clone, Debug, PartialEq)]
pub struct BiOrderSpec {
    rank: usize,
    quotient: FormTower,
    stages: Vec<DerivedStage>,
}

impl BiOrderSpec {
    pub fn new(rank: usize, quotient: FormTower, stages: Vec<DerivedStage>) -> Result<BiOrderSpec> {
        if quotient.dim() != rank {
            return Err(Error::Config(format!(
                "quotient tower dimension {} does not match rank {rank}",
                quotient.dim()
            )));
        }
        if stages.is_empty() {
            return Err(Error::Config("at least one derived stage required".into()));
        }
        if !matches!(stages.last(), Some(DerivedStage::LeadingCoeff { .. })) {
            return Err(Error::Config(
                "the final derived stage must be a leading-coefficient stage".into(),
            ));
        }
        for s in &stages {
            s.validate(rank)?;
        }
        Ok(BiOrderSpec {
            rank,
            quotient,
            stages,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn quotient(&self) -> &FormTower {
        &self.quotient
    }

    pub fn stages(&self) -> &[DerivedStage] {
        &self.stages
    }

    pub fn sign(&self, e: &WreathElement) -> Result<Sign> {
        if e.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: e.rank(),
            });
        }
        if !e.in_image() {
            return Err(Error::NotInImage);
        }
        let t: Vec<Int> = e.abelianization().iter().map(|&c| Int::from(c)).collect();
        if t.iter().any(|c| !c.is_zero()) {
            self.quotient.sign(&t)
        } else {
            derived_sign(&self.stages, e)
        }
    }
}

/// The non-convex bi-order in rank 3 and up: the coordinates away from the
/// distinguished generator lead; on the remaining cosets a linear functional
/// on the derived subgroup decides, then the distinguished exponent, then a
/// leading-coefficient tiebreak on the kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct NonConvexSpec {
    rank: usize,
    distinguished: usize,
    matrix: Vec<Vec<i64>>,
    offsets: Vec<i64>,
    quotient_rest: FormTower,
    tiebreak_q: FormTower,
    tiebreak_coeff: FormTower,
}

impl NonConvexSpec {
    pub fn new(
        rank: usize,
        distinguished: usize,
        matrix: Vec<Vec<i64>>,
        offsets: Vec<i64>,
        quotient_rest: FormTower,
        tiebreak_q: FormTower,
        tiebreak_coeff: FormTower,
    ) -> Result<NonConvexSpec> {
        if rank < 3 {
            return Err(Error::RankTooSmall { need: 3, got: rank });
        }
        if distinguished >= rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: distinguished + 1,
            });
        }
        if matrix.len() != rank || offsets.len() != rank || matrix.iter().any(|r| r.len() != rank)
        {
            return Err(Error::Config(format!(
                "functional needs a {rank}x{rank} matrix and {rank} offsets"
            )));
        }
        if quotient_rest.dim() != rank - 1 {
            return Err(Error::Config(format!(
                "quotient tower must have dimension {}",
                rank - 1
            )));
        }
        if tiebreak_q.dim() != rank || tiebreak_coeff.dim() != rank {
            return Err(Error::Config(format!(
                "tiebreak towers must have dimension {rank}"
            )));
        }
        Ok(NonConvexSpec {
            rank,
            distinguished,
            matrix,
            offsets,
            quotient_rest,
            tiebreak_q,
            tiebreak_coeff,
        })
    }

    /// The default construction: functional weights `A[i][k] = 1` for
    /// `0 < k < i` (so conjugates of commutators in the non-distinguished
    /// generators map to 1 and everything touching the first generator maps
    /// to 0), lexicographic towers elsewhere.
    pub fn thm_default(rank: usize) -> Result<NonConvexSpec> {
        let mut matrix = vec![vec![0i64; rank]; rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (k, cell) in row.iter_mut().enumerate() {
                if k >= 1 && k < i {
                    *cell = 1;
                }
            }
        }
        NonConvexSpec::new(
            rank,
            0,
            matrix,
            vec![0; rank],
            FormTower::lex(rank - 1),
            FormTower::lex(rank),
            FormTower::lex(rank),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn distinguished(&self) -> usize {
        self.distinguished
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn quotient_rest(&self) -> &FormTower {
        &self.quotient_rest
    }

    pub fn tiebreak(&self) -> (&FormTower, &FormTower) {
        (&self.tiebreak_q, &self.tiebreak_coeff)
    }

    /// The functional on the derived subgroup.
    pub fn phi(&self, e: &WreathElement) -> Result<Int> {
        if !e.in_derived() {
            return Err(Error::NotInDerived);
        }
        linear_functional(&self.matrix, &self.offsets, e)
    }

    pub fn sign(&self, e: &WreathElement) -> Result<Sign> {
        if e.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: e.rank(),
            });
        }
        if !e.in_image() {
            return Err(Error::NotInImage);
        }
        let t = e.abelianization();
        let proj: Vec<Int> = t
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != self.distinguished)
            .map(|(_, &c)| Int::from(c))
            .collect();
        if proj.iter().any(|c| !c.is_zero()) {
            return self.quotient_rest.sign(&proj);
        }
        let i = t[self.distinguished];
        let h = e.mul(
            &WreathElement::eval(&GroupWord::generator_power(
                self.rank,
                self.distinguished,
                -i,
            )?),
        )?;
        let psi = linear_functional(&self.matrix, &self.offsets, &h)?;
        if !psi.is_zero() {
            return Ok(Sign::of_int(&psi));
        }
        if i != 0 {
            return Ok(Sign::of_i64(i));
        }
        if h.is_identity() {
            return Ok(Sign::Zero);
        }
        leading_coeff_sign(&self.tiebreak_q, &self.tiebreak_coeff, &h)
    }
}

/// Any of the implemented bi-invariant orders, as one sign oracle.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum OrderSpec {
    Quotient(BiOrderSpec),
    NonConvex(NonConvexSpec),
}

impl OrderSpec {
    pub fn rank(&self) -> usize {
        match self {
            OrderSpec::Quotient(s) => s.rank(),
            OrderSpec::NonConvex(s) => s.rank(),
        }
    }

    pub fn sign(&self, e: &WreathElement) -> Result<Sign> {
        match self {
            OrderSpec::Quotient(s) => s.sign(e),
            OrderSpec::NonConvex(s) => s.sign(e),
        }
    }

    /// Sign of `e1 * e2^{-1}`.
    pub fn compare(&self, e1: &WreathElement, e2: &WreathElement) -> Result<Sign> {
        self.sign(&e1.mul(&e2.inv())?)
    }

    /// `e` when positive, its inverse otherwise.
    pub fn abs(&self, e: &WreathElement) -> Result<WreathElement> {
        Ok(if self.sign(e)? == Sign::Pos {
            e.clone()
        } else {
            e.inv()
        })
    }
}
