//! Total orders on lattices presented as towers of linear forms, and the
//! comparison index machinery built on top of them.
//!
//! A tower orders the lattice by the sign of the first form that does not
//! vanish on a vector. Entries live in the field generated by one optional
//! real algebraic number, so both rational towers and towers with a single
//! irrational slope are exact. Comparison indices come in three flavors:
//! exact ratios read off the tower, limit approximations driven by a bare
//! sign oracle, and rational bracketing of the index between oracle queries.

use num_traits::{One, Zero};

use crate::laurent::RatPoly;
use crate::realalg::{elem_sign, QAlphaElem, RealAlgebraic};
use crate::{Error, Int, Rat, Result, Sign};

/// Archimedean relation between two nonzero elements of an ordered abelian
/// group: mutually bounded, or lexicographically below/above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    /// Each element is bounded by a multiple of the other.
    Comparable,
    /// The left element is lexicographically less (vanishes earlier).
    LexLess,
    /// The left element is lexicographically greater.
    LexGreater,
}

/// Outcome of a comparison-index computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonBracket {
    /// The index is known exactly as an element of the ambient field.
    Exact(QAlphaElem),
    /// The index lies in the open rational interval (both endpoints >= 0).
    Interval(Rat, Rat),
    /// The first element lexicographically dominates the second.
    Zero,
    /// The second element lexicographically dominates the first.
    Infinity,
}

/// Result of the limit-based comparison index at a fixed denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitResult {
    Ratio(Rat),
    /// No minimum found below the probe bound: witnesses an infinite index.
    NoMinimum,
}

/// A total order on the lattice of a fixed dimension, described by linear
/// forms applied in sequence; the first nonzero value decides the sign.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTower {
    dim: usize,
    alpha: Option<RealAlgebraic>,
    forms: Vec<Vec<QAlphaElem>>,
}

impl FormTower {
    pub fn new(
        dim: usize,
        alpha: Option<RealAlgebraic>,
        forms: Vec<Vec<QAlphaElem>>,
    ) -> Result<FormTower> {
        if forms.is_empty() {
            return Err(Error::BadTower("tower needs at least one form".into()));
        }
        for f in &forms {
            if f.len() != dim {
                return Err(Error::BadTower(format!(
                    "form has {} entries, expected {dim}",
                    f.len()
                )));
            }
            if alpha.is_none() {
                for e in f {
                    if e.as_rat().is_none() {
                        return Err(Error::BadTower(
                            "algebraic entries require an ambient algebraic number".into(),
                        ));
                    }
                }
            }
        }
        let forms = match &alpha {
            Some(a) => forms
                .into_iter()
                .map(|f| f.into_iter().map(|e| a.reduce(e.rep().clone())).collect())
                .collect(),
            None => forms,
        };
        Ok(FormTower { dim, alpha, forms })
    }

    /// Standard lexicographic tower (identity forms).
    pub fn lex(dim: usize) -> FormTower {
        let forms = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            QAlphaElem::one()
                        } else {
                            QAlphaElem::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        FormTower {
            dim,
            alpha: None,
            forms,
        }
    }

    /// Lexicographic tower with every form negated: reverses [`FormTower::lex`].
    pub fn neg_lex(dim: usize) -> FormTower {
        let forms = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            QAlphaElem::from_rat(-Rat::one())
                        } else {
                            QAlphaElem::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        FormTower {
            dim,
            alpha: None,
            forms,
        }
    }

    /// Tower from rational form entries.
    pub fn from_rational_forms(dim: usize, forms: &[Vec<Rat>]) -> Result<FormTower> {
        FormTower::new(
            dim,
            None,
            forms
                .iter()
                .map(|f| f.iter().map(|r| QAlphaElem::from_rat(r.clone())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> Option<&RealAlgebraic> {
        self.alpha.as_ref()
    }

    pub fn forms(&self) -> &[Vec<QAlphaElem>] {
        &self.forms
    }

    fn check_dim(&self, u: &[Int]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::VarCountMismatch {
                expected: self.dim,
                got: u.len(),
            });
        }
        Ok(())
    }

    fn form_value(&self, form: &[QAlphaElem], u: &[Int]) -> QAlphaElem {
        let mut acc = RatPoly::zero();
        for (e, c) in form.iter().zip(u) {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&e.rep().scale(&Rat::from_integer(c.clone())));
        }
        match &self.alpha {
            Some(a) => a.reduce(acc),
            None => QAlphaElem::from_poly_unchecked(acc),
        }
    }

    /// Index of the first form with nonzero value on `u`, with that value.
    /// `None` for the zero vector. A nonzero vector vanishing on every form
    /// means the tower is not total.
    fn first_nonzero(&self, u: &[Int]) -> Result<Option<(usize, QAlphaElem)>> {
        self.check_dim(u)?;
        if u.iter().all(|c| c.is_zero()) {
            return Ok(None);
        }
        for (j, form) in self.forms.iter().enumerate() {
            let v = self.form_value(form, u);
            if elem_sign(self.alpha.as_ref(), &v)? != Sign::Zero {
                return Ok(Some((j, v)));
            }
        }
        Err(Error::NotTotal)
    }

    /// Sign of `u` under the tower order.
    pub fn sign(&self, u: &[Int]) -> Result<Sign> {
        match self.first_nonzero(u)? {
            None => Ok(Sign::Zero),
            Some((_, v)) => elem_sign(self.alpha.as_ref(), &v),
        }
    }

    /// Archimedean relation between two nonzero vectors: compares the first
    /// form indices that see them.
    pub fn rel(&self, u: &[Int], v: &[Int]) -> Result<Rel> {
        let ju = self.first_nonzero(u)?.ok_or(Error::NotPositive)?.0;
        let jv = self.first_nonzero(v)?.ok_or(Error::NotPositive)?.0;
        Ok(if ju == jv {
            Rel::Comparable
        } else if ju > jv {
            Rel::LexLess
        } else {
            Rel::LexGreater
        })
    }

    /// Exact comparison index of two tower-positive vectors: the ratio of the
    /// form values at the first index seeing either vector.
    pub fn ci_exact(&self, u: &[Int], v: &[Int]) -> Result<ComparisonBracket> {
        let (ju, fu) = match self.first_nonzero(u)? {
            Some(x) => x,
            None => return Err(Error::NotPositive),
        };
        let (jv, fv) = match self.first_nonzero(v)? {
            Some(x) => x,
            None => return Err(Error::NotPositive),
        };
        if elem_sign(self.alpha.as_ref(), &fu)? != Sign::Pos
            || elem_sign(self.alpha.as_ref(), &fv)? != Sign::Pos
        {
            return Err(Error::NotPositive);
        }
        if ju < jv {
            return Ok(ComparisonBracket::Zero);
        }
        if ju > jv {
            return Ok(ComparisonBracket::Infinity);
        }
        let ratio = match &self.alpha {
            Some(a) => {
                let inv = a.qa_inv(&fu)?;
                a.qa_mul(&fv, &inv)
            }
            None => {
                let num = fv.as_rat().expect("rational tower");
                let den = fu.as_rat().expect("rational tower");
                QAlphaElem::from_rat(num / den)
            }
        };
        Ok(ComparisonBracket::Exact(ratio))
    }

    /// The subset of elements that are Archimedean-maximal: every other
    /// element of the set is comparable or lexicographically below.
    pub fn max_subset(&self, set: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
        let mut best: Option<usize> = None;
        let mut out: Vec<Vec<Int>> = Vec::new();
        for v in set {
            let j = self.first_nonzero(v)?.ok_or(Error::NotPositive)?.0;
            match best {
                None => {
                    best = Some(j);
                    out.push(v.clone());
                }
                Some(b) if j < b => {
                    best = Some(j);
                    out.clear();
                    out.push(v.clone());
                }
                Some(b) if j == b => out.push(v.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Limit-based comparison index through this tower's own sign function.
    pub fn ci_by_limit(&self, u: &[Int], v: &[Int], n: u64) -> Result<LimitResult> {
        ci_by_limit(|m, k| self.sign(&combine(u, v, m, k)), n)
    }

    /// Bracketing comparison index through this tower's own sign function.
    pub fn ci_bracket(&self, u: &[Int], v: &[Int], denom_bound: u64) -> Result<ComparisonBracket> {
        ci_bracket(|m, k| self.sign(&combine(u, v, m, k)), denom_bound)
    }
}

/// `m*u + k*v` for lattice vectors.
pub fn combine(u: &[Int], v: &[Int], m: &Int, k: &Int) -> Vec<Int> {
    u.iter().zip(v).map(|(a, b)| a * m + b * k).collect()
}

pub fn vec_i64(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&c| Int::from(c)).collect()
}

/// Probe magnitude at which unbounded searches give up: 2^64.
fn probe_bound() -> Int {
    Int::one() << 64
}

/// Limit-based comparison index from a bare sign oracle.
///
/// `comb_sign(m, k)` must report the sign of `m*u + k*v` for the two positive
/// elements under study. For fixed `n` the function computes
/// `m(n) = min { m : m*u + n*v >= 0 }` by exponential bracketing followed by
/// binary search, and returns `-m(n)/n`. When no negative response is found
/// down to magnitude 2^64 the index is reported as [`LimitResult::NoMinimum`],
/// a witness that the true index is infinite.
pub fn ci_by_limit(comb_sign: impl Fn(&Int, &Int) -> Result<Sign>, n: u64) -> Result<LimitResult> {
    if n == 0 {
        return Err(Error::Config("denominator n must be positive".into()));
    }
    if comb_sign(&Int::one(), &Int::zero())? != Sign::Pos
        || comb_sign(&Int::zero(), &Int::one())? != Sign::Pos
    {
        return Err(Error::NotPositive);
    }
    let n_int = Int::from(n);
    let nonneg = |m: &Int| -> Result<bool> { Ok(comb_sign(m, &n_int)? != Sign::Neg) };
    // m(n) <= 0 because u, v are positive. Search downward for a failure.
    if !nonneg(&Int::zero())? {
        return Err(Error::OracleInconsistent);
    }
    let mut lo = -Int::one(); // candidate failing point
    loop {
        if !nonneg(&lo)? {
            break;
        }
        lo = &lo * 2;
        if -&lo > probe_bound() {
            return Ok(LimitResult::NoMinimum);
        }
    }
    // Invariant: lo fails, hi passes; binary search the boundary.
    let mut hi = if lo == -Int::one() {
        Int::zero()
    } else {
        &lo / 2
    };
    while &hi - &lo > Int::one() {
        let mid = (&hi + &lo) / 2;
        if nonneg(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // hi = m(n); verify the boundary as a consistency check on the oracle.
    if !nonneg(&hi)? || nonneg(&(&hi - 1))? {
        return Err(Error::OracleInconsistent);
    }
    Ok(LimitResult::Ratio(Rat::new(-hi, Int::from(n))))
}

/// Bracketing comparison index from a bare sign oracle.
///
/// Queries `sign(q*u - p*v)`: a nonnegative answer certifies `CI <= q/p`, a
/// negative one certifies `CI >= q/p`. The returned bracket has width at most
/// `2/denom_bound`. `Zero`, `Infinity` and `Exact` outcomes are certified at
/// probe magnitude 2^64.
pub fn ci_bracket(
    comb_sign: impl Fn(&Int, &Int) -> Result<Sign>,
    denom_bound: u64,
) -> Result<ComparisonBracket> {
    if denom_bound == 0 {
        return Err(Error::Config("denominator bound must be positive".into()));
    }
    if comb_sign(&Int::one(), &Int::zero())? != Sign::Pos
        || comb_sign(&Int::zero(), &Int::one())? != Sign::Pos
    {
        return Err(Error::NotPositive);
    }
    // sign(q*u - p*v)
    let test = |q: &Int, p: &Int| comb_sign(q, &-p.clone());
    let probe = probe_bound();
    // u beyond 2^64 copies of v: the index is (certified at probe scale) zero.
    match test(&Int::one(), &probe)? {
        Sign::Pos => return Ok(ComparisonBracket::Zero),
        Sign::Zero => {
            return Ok(ComparisonBracket::Exact(QAlphaElem::from_rat(Rat::new(
                Int::one(),
                probe,
            ))))
        }
        Sign::Neg => {}
    }
    // v beyond 2^64 copies of u.
    if test(&probe, &Int::one())? == Sign::Neg {
        return Ok(ComparisonBracket::Infinity);
    }
    // Find an integer upper bound by doubling.
    let mut hi = Int::one();
    while test(&hi, &Int::one())? == Sign::Neg {
        hi = &hi * 2;
    }
    let mut lo = Rat::zero();
    let mut hi = Rat::from_integer(hi);
    let width_goal = Rat::new(Int::from(2), Int::from(denom_bound));
    while &hi - &lo > width_goal {
        let mid = (&lo + &hi) / Rat::from_integer(Int::from(2));
        match test(mid.numer(), mid.denom())? {
            Sign::Zero => return Ok(ComparisonBracket::Exact(QAlphaElem::from_rat(mid))),
            Sign::Pos => hi = mid,
            Sign::Neg => lo = mid,
        }
    }
    // Try to certify the simplest rational in [lo, hi] as the exact index:
    // CI <= c together with CI >= c - 1/(p*2^64) pins it at probe precision.
    let c = simplest_in_interval(&lo, &hi);
    if test(c.numer(), c.denom())? != Sign::Neg {
        let kq = c.numer() * &probe - Int::one();
        let kp = c.denom() * &probe;
        if test(&kq, &kp)? == Sign::Neg {
            return Ok(ComparisonBracket::Exact(QAlphaElem::from_rat(c)));
        }
    }
    Ok(ComparisonBracket::Interval(lo, hi))
}

/// The rational with smallest denominator (then numerator) in `[lo, hi]`,
/// by Stern-Brocot descent. Both bounds must be nonnegative.
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo <= &Rat::zero() {
        return Rat::zero();
    }
    if lo == hi {
        return lo.clone();
    }
    // Stern-Brocot / continued-fraction walk on the open interval.
    let mut a = lo.clone();
    let mut b = hi.clone();
    let mut digits: Vec<Int> = Vec::new();
    loop {
        let ia = a.floor().to_integer();
        let ib = b.floor().to_integer();
        let frac_a = &a - Rat::from_integer(ia.clone());
        if ia != ib {
            // Some integer lies in [a, b]: the smallest is ceil(a).
            digits.push(if frac_a.is_zero() { ia } else { &ia + 1 });
            break;
        }
        if frac_a.is_zero() {
            digits.push(ia);
            break;
        }
        digits.push(ia.clone());
        let frac_b = &b - Rat::from_integer(ib);
        // Recurse on reciprocals of the fractional parts, interval swapped.
        a = frac_b.recip();
        b = frac_a.recip();
    }
    let mut val = Rat::from_integer(digits.pop().unwrap());
    while let Some(x) = digits.pop() {
        val = Rat::from_integer(x) + val.recip();
    }
    val
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realalg;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    fn tower_12_10() -> FormTower {
        FormTower::from_rational_forms(
            2,
            &[vec![rat(1, 1), rat(2, 1)], vec![rat(1, 1), rat(0, 1)]],
        )
        .unwrap()
    }

    fn sqrt2_tower() -> FormTower {
        let a = realalg::sqrt2();
        FormTower::new(
            2,
            Some(a.clone()),
            vec![vec![QAlphaElem::one(), a.generator()]],
        )
        .unwrap()
    }

    #[test]
    fn tower_signs() {
        let lex = FormTower::lex(2);
        assert_eq!(lex.sign(&vec_i64(&[2, 3])).unwrap(), Sign::Pos);
        assert_eq!(lex.sign(&vec_i64(&[0, 0])).unwrap(), Sign::Zero);
        assert_eq!(lex.sign(&vec_i64(&[0, -1])).unwrap(), Sign::Neg);
        let t = FormTower::from_rational_forms(
            2,
            &[vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
        )
        .unwrap();
        assert_eq!(t.sign(&vec_i64(&[1, -1])).unwrap(), Sign::Pos);
        let s = sqrt2_tower();
        assert_eq!(s.sign(&vec_i64(&[-1, 1])).unwrap(), Sign::Pos);
    }

    #[test]
    fn not_total_surfaces() {
        let t = FormTower::from_rational_forms(2, &[vec![rat(1, 1), rat(1, 1)]]).unwrap();
        assert!(matches!(t.sign(&vec_i64(&[1, -1])), Err(Error::NotTotal)));
    }

    #[test]
    fn rel_cases() {
        let lex = FormTower::lex(2);
        assert_eq!(
            lex.rel(&vec_i64(&[1, 0]), &vec_i64(&[0, 1])).unwrap(),
            Rel::LexGreater
        );
        assert_eq!(
            lex.rel(&vec_i64(&[0, 1]), &vec_i64(&[1, 0])).unwrap(),
            Rel::LexLess
        );
        assert_eq!(
            lex.rel(&vec_i64(&[1, 2]), &vec_i64(&[1, 2])).unwrap(),
            Rel::Comparable
        );
        let s = sqrt2_tower();
        assert_eq!(
            s.rel(&vec_i64(&[1, 0]), &vec_i64(&[0, 1])).unwrap(),
            Rel::Comparable
        );
    }

    #[test]
    fn ci_exact_cases() {
        let lex = FormTower::lex(2);
        assert_eq!(
            lex.ci_exact(&vec_i64(&[1, 0]), &vec_i64(&[1, 0])).unwrap(),
            ComparisonBracket::Exact(QAlphaElem::one())
        );
        assert_eq!(
            lex.ci_exact(&vec_i64(&[1, 0]), &vec_i64(&[0, 1])).unwrap(),
            ComparisonBracket::Zero
        );
        assert_eq!(
            lex.ci_exact(&vec_i64(&[0, 1]), &vec_i64(&[1, 0])).unwrap(),
            ComparisonBracket::Infinity
        );
        let t = tower_12_10();
        assert_eq!(
            t.ci_exact(&vec_i64(&[1, 0]), &vec_i64(&[0, 1])).unwrap(),
            ComparisonBracket::Exact(QAlphaElem::from_rat(rat(2, 1)))
        );
        assert!(t.ci_exact(&vec_i64(&[-1, 0]), &vec_i64(&[0, 1])).is_err());
    }

    #[test]
    fn ci_by_limit_examples() {
        let t = tower_12_10();
        let u = vec_i64(&[1, 0]);
        let v = vec_i64(&[0, 1]);
        assert_eq!(
            t.ci_by_limit(&u, &v, 10).unwrap(),
            LimitResult::Ratio(rat(19, 10))
        );
        assert_eq!(
            t.ci_by_limit(&u, &v, 1000).unwrap(),
            LimitResult::Ratio(rat(1999, 1000))
        );
        // CI(x, x) = 1 exactly at every n.
        for n in [1u64, 7, 64] {
            assert_eq!(
                t.ci_by_limit(&u, &u, n).unwrap(),
                LimitResult::Ratio(rat(1, 1))
            );
        }
    }

    #[test]
    fn ci_by_limit_exhaustive_oracle() {
        // Independent scan of m in [-40, 0] for the tower [(1,2),(1,0)].
        let t = tower_12_10();
        let u = vec_i64(&[1, 0]);
        let v = vec_i64(&[0, 1]);
        let n = 10i64;
        let mut m_of_n = None;
        for m in -40..=0 {
            let w = combine(&u, &v, &Int::from(m), &Int::from(n));
            if t.sign(&w).unwrap() != Sign::Neg {
                m_of_n = Some(m);
                break;
            }
        }
        assert_eq!(m_of_n, Some(-19));
    }

    #[test]
    fn ci_by_limit_no_minimum() {
        let lex = FormTower::lex(2);
        // u = (0,1) is dominated by v = (1,0): m*u + n*v is positive for
        // every m, so no minimum exists.
        assert_eq!(
            lex.ci_by_limit(&vec_i64(&[0, 1]), &vec_i64(&[1, 0]), 4)
                .unwrap(),
            LimitResult::NoMinimum
        );
    }

    #[test]
    fn ci_bracket_cases() {
        let lex = FormTower::lex(2);
        assert_eq!(
            lex.ci_bracket(&vec_i64(&[1, 0]), &vec_i64(&[0, 1]), 100)
                .unwrap(),
            ComparisonBracket::Zero
        );
        assert_eq!(
            lex.ci_bracket(&vec_i64(&[0, 1]), &vec_i64(&[1, 0]), 100)
                .unwrap(),
            ComparisonBracket::Infinity
        );
        let t = tower_12_10();
        assert_eq!(
            t.ci_bracket(&vec_i64(&[1, 0]), &vec_i64(&[0, 1]), 100)
                .unwrap(),
            ComparisonBracket::Exact(QAlphaElem::from_rat(rat(2, 1)))
        );
        // sqrt(2) tower: bracket contains sqrt(2) with width <= 1/50.
        let s = sqrt2_tower();
        match s
            .ci_bracket(&vec_i64(&[1, 0]), &vec_i64(&[0, 1]), 100)
            .unwrap()
        {
            ComparisonBracket::Interval(lo, hi) => {
                assert!(&hi - &lo <= rat(1, 50));
                let a = realalg::sqrt2();
                assert_eq!(a.compare_rational(&lo), Sign::Pos);
                assert_eq!(a.compare_rational(&hi), Sign::Neg);
            }
            other => panic!("expected interval, got {other:?}"),
        }
    }

    #[test]
    fn max_subset_cases() {
        let lex = FormTower::lex(2);
        let s = vec![vec_i64(&[1, 0]), vec_i64(&[0, 1])];
        assert_eq!(lex.max_subset(&s).unwrap(), vec![vec_i64(&[1, 0])]);
        let t = sqrt2_tower();
        assert_eq!(t.max_subset(&s).unwrap().len(), 2);
        let single = vec![vec_i64(&[0, -3])];
        assert_eq!(lex.max_subset(&single).unwrap(), single);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in_interval(&rat(13, 10), &rat(3, 2)), rat(3, 2));
        assert_eq!(
            simplest_in_interval(&rat(199, 100), &rat(201, 100)),
            rat(2, 1)
        );
        assert_eq!(simplest_in_interval(&rat(2, 7), &rat(1, 3)), rat(1, 3));
        assert_eq!(simplest_in_interval(&rat(0, 1), &rat(1, 2)), rat(0, 1));
    }
}
