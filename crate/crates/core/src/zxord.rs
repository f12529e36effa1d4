//! Shift-invariant total orders on the univariate Laurent ring over the
//! integers.
//!
//! An order is carried as a sequence of stages. Each algebraic stage holds a
//! positive real algebraic number and a sign: a polynomial that does not
//! vanish at the number is decided there; one that vanishes is divided by the
//! stage's minimal polynomial and passed on. A final stage at zero (or at
//! infinity) decides by the lowest-degree (resp. highest-degree) coefficient.
//! Polynomials surviving every stage lie in a convex subgroup the spec does
//! not resolve, reported as [`Error::Underdetermined`].

use num_traits::{One, Zero};

use crate::latord::{ci_bracket, ComparisonBracket};
use crate::laurent::{IntPoly, LaurentPoly, Monomial};
use crate::realalg::RealAlgebraic;
use crate::{Error, Int, Rat, Result, Sign};

#[derive(Clone, Debug, PartialEq)]
pub enum StageKind {
    /// Decide by the lowest-degree coefficient (the ratio index is 0).
    AtZero,
    /// Decide by the highest-degree coefficient (the ratio index is infinite).
    AtInfinity,
    /// Decide by the sign of the value at a positive algebraic number.
    AtAlgebraic(RealAlgebraic),
}

/// One stage of the codification: a comparison value plus an orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct ZxStage {
    pub kind: StageKind,
    pub eps: Sign,
}

impl ZxStage {
    pub fn new(kind: StageKind, eps: Sign) -> Result<ZxStage> {
        if eps == Sign::Zero {
            return Err(Error::BadSpec("stage orientation must be +1 or -1".into()));
        }
        if let StageKind::AtAlgebraic(a) = &kind {
            if !a.is_positive() {
                return Err(Error::BadSpec(
                    "algebraic stage value must be strictly positive".into(),
                ));
            }
        }
        Ok(ZxStage { kind, eps })
    }

    pub fn at_zero(eps: Sign) -> ZxStage {
        ZxStage::new(StageKind::AtZero, eps).unwrap()
    }

    pub fn at_infinity(eps: Sign) -> ZxStage {
        ZxStage::new(StageKind::AtInfinity, eps).unwrap()
    }

    pub fn at_algebraic(a: RealAlgebraic, eps: Sign) -> Result<ZxStage> {
        ZxStage::new(StageKind::AtAlgebraic(a), eps)
    }
}

/// A shift-invariant order on the univariate Laurent ring, codified stage by
/// stage. Orders ending in an algebraic stage are partial beyond their depth.
#[derive(Clone, Debug, PartialEq)]
pub struct ZxOrderSpec {
    stages: Vec<ZxStage>,
}

impl ZxOrderSpec {
    pub fn new(stages: Vec<ZxStage>) -> Result<ZxOrderSpec> {
        if stages.is_empty() {
            return Err(Error::BadSpec("order spec needs at least one stage".into()));
        }
        for (i, st) in stages.iter().enumerate() {
            let terminal = matches!(st.kind, StageKind::AtZero | StageKind::AtInfinity);
            if terminal && i + 1 != stages.len() {
                return Err(Error::BadSpec(
                    "a stage at zero or infinity may only appear last".into(),
                ));
            }
        }
        Ok(ZxOrderSpec { stages })
    }

    pub fn stages(&self) -> &[ZxStage] {
        &self.stages
    }

    fn algebraic_stage_count(&self) -> usize {
        self.stages
            .iter()
            .filter(|s| matches!(s.kind, StageKind::AtAlgebraic(_)))
            .count()
    }

    /// Sign of `f` together with the index of the deciding stage.
    pub fn sign_with_stage(&self, f: &LaurentPoly) -> Result<(Sign, usize)> {
        if f.var_count() != 1 {
            return Err(Error::NotUnivariate { got: f.var_count() });
        }
        if f.is_zero() {
            return Ok((Sign::Zero, 0));
        }
        // A monomial shift is an order automorphism, so normalize to an
        // ordinary polynomial with nonzero constant term.
        let (_, mut g) = f.to_univariate()?;
        let (_, g0) = g.split_monomial();
        g = g0;
        for (i, stage) in self.stages.iter().enumerate() {
            match &stage.kind {
                StageKind::AtAlgebraic(a) => {
                    let s = a.sign_at_int(&g);
                    if s != Sign::Zero {
                        return Ok((stage.eps * s, i));
                    }
                    g = g.divexact(a.minpoly())?;
                }
                StageKind::AtZero => {
                    return Ok((stage.eps * Sign::of_int(&g.trailing()), i));
                }
                StageKind::AtInfinity => {
                    let lead = g.leading().cloned().unwrap_or_else(Int::zero);
                    return Ok((stage.eps * Sign::of_int(&lead), i));
                }
            }
        }
        Err(Error::Underdetermined)
    }

    /// Sign of `f` under the order.
    pub fn sign(&self, f: &LaurentPoly) -> Result<Sign> {
        Ok(self.sign_with_stage(f)?.0)
    }

    /// Sign of `f - g`.
    pub fn compare(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<Sign> {
        self.sign(&f.sub(g)?)
    }

    /// Generators of the nested convex subgroups: entry `s` is the product of
    /// the first `s` stage minimal polynomials (entry 0 is the constant 1).
    pub fn chain(&self, depth: usize) -> Result<Vec<IntPoly>> {
        let algs = self.algebraic_stage_count();
        if depth > algs {
            return Err(Error::DepthExceeded {
                depth,
                stages: algs,
            });
        }
        let mut out = vec![IntPoly::one()];
        let mut acc = IntPoly::one();
        for st in &self.stages {
            if out.len() > depth {
                break;
            }
            if let StageKind::AtAlgebraic(a) = &st.kind {
                acc = acc.mul(a.minpoly());
                out.push(acc.clone());
            }
        }
        Ok(out)
    }

    /// Perturb into a different order keeping a finite set positive. Returns
    /// the perturbed spec and a witness polynomial whose sign flips.
    pub fn perturb(
        &self,
        positive_set: &[LaurentPoly],
        mode: PerturbMode,
    ) -> Result<(ZxOrderSpec, LaurentPoly)> {
        let mut depths = Vec::with_capacity(positive_set.len());
        for f in positive_set {
            let (s, d) = self.sign_with_stage(f)?;
            if s != Sign::Pos {
                return Err(Error::NotPositive);
            }
            depths.push(d);
        }
        match mode {
            PerturbMode::FlipDeepest => self.perturb_flip(&depths),
            PerturbMode::MoveR => self.perturb_move(positive_set),
        }
    }

    fn perturb_flip(&self, depths: &[usize]) -> Result<(ZxOrderSpec, LaurentPoly)> {
        let last = self.stages.len() - 1;
        if depths.iter().any(|&d| d >= last) {
            return Err(Error::CannotPerturb(
                "a member of the positive set is decided at the deepest stage".into(),
            ));
        }
        let mut stages = self.stages.clone();
        stages[last].eps = -stages[last].eps;
        let spec = ZxOrderSpec { stages };
        // Witness: the chain generator killed by every earlier stage.
        let mut acc = IntPoly::one();
        for st in &self.stages[..last] {
            if let StageKind::AtAlgebraic(a) = &st.kind {
                acc = acc.mul(a.minpoly());
            }
        }
        let witness = acc.to_laurent();
        debug_assert_eq!(self.sign(&witness)?, -spec.sign(&witness)?);
        Ok((spec, witness))
    }

    fn perturb_move(&self, positive_set: &[LaurentPoly]) -> Result<(ZxOrderSpec, LaurentPoly)> {
        let first = &self.stages[0];
        let eps = first.eps;
        // All positive-set members must stay strictly positive at the new
        // rational value; search around the current stage's location.
        let ok_at = |r: &Rat| -> Result<bool> {
            for f in positive_set {
                let v = f.eval_rat(r)?;
                if eps * Sign::of_rat(&v) != Sign::Pos {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let two = Rat::from_integer(Int::from(2));
        match &first.kind {
            StageKind::AtAlgebraic(a) => {
                let mut cur = a.clone();
                let mut found: Option<Rat> = None;
                for _ in 0..96 {
                    let (lo, hi) = cur.interval();
                    let lo = lo.clone();
                    let hi = hi.clone();
                    for cand in [&hi, &lo] {
                        if cand > &Rat::zero()
                            && a.compare_rational(cand) != Sign::Zero
                            && ok_at(cand)?
                        {
                            found = Some((*cand).clone());
                            break;
                        }
                    }
                    if found.is_some() {
                        break;
                    }
                    let width = (&hi - &lo) / &two;
                    cur = cur.refine_to_width(&width);
                }
                let r_new = found.ok_or_else(|| {
                    Error::CannotPerturb("no nearby rational keeps the positive set positive".into())
                })?;
                // A rational strictly between the old and new values.
                let side = a.compare_rational(&r_new);
                let mut cur = a.clone();
                let between = loop {
                    let (lo, hi) = cur.interval();
                    if side == Sign::Neg && &r_new > hi {
                        break (hi + &r_new) / &two;
                    }
                    if side == Sign::Pos && &r_new < lo {
                        break (lo + &r_new) / &two;
                    }
                    let width = (hi - lo) / &two;
                    cur = cur.refine_to_width(&width);
                };
                let witness = line_through(&between);
                let mut stages = self.stages.clone();
                stages[0] = ZxStage::at_algebraic(RealAlgebraic::from_rational(&r_new), eps)?;
                let spec = ZxOrderSpec { stages };
                debug_assert_eq!(self.sign(&witness)?, -spec.sign(&witness)?);
                Ok((spec, witness))
            }
            StageKind::AtZero => {
                let mut r = Rat::new(Int::one(), Int::from(2));
                let mut found = None;
                for _ in 0..256 {
                    if ok_at(&r)? {
                        found = Some(r.clone());
                        break;
                    }
                    r /= &two;
                }
                let r_new = found.ok_or_else(|| {
                    Error::CannotPerturb("no small rational keeps the positive set".into())
                })?;
                let witness = line_through(&(&r_new / &two));
                let spec = ZxOrderSpec {
                    stages: vec![
                        ZxStage::at_algebraic(RealAlgebraic::from_rational(&r_new), eps)?,
                        first.clone(),
                    ],
                };
                debug_assert_eq!(self.sign(&witness)?, -spec.sign(&witness)?);
                Ok((spec, witness))
            }
            StageKind::AtInfinity => {
                let mut r = Rat::from_integer(Int::from(2));
                let mut found = None;
                for _ in 0..256 {
                    if ok_at(&r)? {
                        found = Some(r.clone());
                        break;
                    }
                    r *= &two;
                }
                let r_new = found.ok_or_else(|| {
                    Error::CannotPerturb("no large rational keeps the positive set".into())
                })?;
                let witness = line_through(&(&r_new * &two));
                let spec = ZxOrderSpec {
                    stages: vec![
                        ZxStage::at_algebraic(RealAlgebraic::from_rational(&r_new), eps)?,
                        first.clone(),
                    ],
                };
                debug_assert_eq!(self.sign(&witness)?, -spec.sign(&witness)?);
                Ok((spec, witness))
            }
        }
    }
}

/// The polynomial `n*x - m` vanishing exactly at `m/n`.
fn line_through(r: &Rat) -> LaurentPoly {
    LaurentPoly::from_terms(
        1,
        [
            (Monomial(vec![1]), r.denom().clone()),
            (Monomial(vec![0]), -r.numer().clone()),
        ],
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbMode {
    FlipDeepest,
    MoveR,
}

/// Probe the first codification stage of a black-box shift-invariant order:
/// the orientation is the sign of the constant 1, and the comparison value is
/// bracketed through combinations `eps*(m + n*x)`.
pub fn codify_probe(
    oracle: impl Fn(&LaurentPoly) -> Result<Sign>,
    denom_bound: u64,
) -> Result<(Sign, ComparisonBracket)> {
    let one = LaurentPoly::one(1);
    let eps = oracle(&one)?;
    if eps == Sign::Zero {
        return Err(Error::OracleInconsistent);
    }
    let e = Int::from(eps.to_i8());
    let comb = |m: &Int, n: &Int| {
        let poly = LaurentPoly::from_terms(
            1,
            [(Monomial(vec![0]), m * &e), (Monomial(vec![1]), n * &e)],
        );
        oracle(&poly)
    };
    let bracket = ci_bracket(comb, denom_bound)?;
    Ok((eps, bracket))
}
