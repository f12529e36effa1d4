//! Real algebraic numbers with exact sign determination.
//!
//! A number is carried as a primitive integer polynomial with positive leading
//! coefficient together with an open rational isolating interval containing
//! exactly one of its roots. Signs of rational polynomials at the number are
//! decided exactly: reduce modulo the minimal polynomial, then refine the
//! isolating interval by bisection until interval arithmetic certifies the
//! sign. No floating point is involved anywhere.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::laurent::{IntPoly, RatPoly};
use crate::{Error, Int, Rat, Result, Sign};

/// Exact count of real roots of `p` in the open interval `(lo, hi)`.
///
/// The polynomial is replaced by its squarefree part first. Roots at either
/// endpoint are reported as [`Error::EndpointRoot`].
pub fn sturm_count(p: &IntPoly, lo: &Rat, hi: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    if lo >= hi {
        return Err(Error::BadAlgebraic(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    let sf = p.squarefree_part().to_rat();
    let chain = sturm_chain(&sf);
    count_in_interval(&chain, lo, hi)
}

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone()];
    let d = derivative_rat(p);
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn derivative_rat(p: &RatPoly) -> RatPoly {
    let cs = p.coeffs();
    if cs.len() <= 1 {
        return RatPoly::zero();
    }
    RatPoly::new(
        cs.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
            .collect(),
    )
}

fn sign_variations(chain: &[RatPoly], x: &Rat) -> usize {
    let mut prev = Sign::Zero;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Sign::Zero {
            continue;
        }
        if prev != Sign::Zero && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

fn count_in_interval(chain: &[RatPoly], lo: &Rat, hi: &Rat) -> Result<usize> {
    if chain[0].sign_at(lo) == Sign::Zero || chain[0].sign_at(hi) == Sign::Zero {
        return Err(Error::EndpointRoot);
    }
    Ok(sign_variations(chain, lo) - sign_variations(chain, hi))
}

/// Evaluate `p` over the interval `[lo, hi]` with outward interval arithmetic;
/// returns rational bounds containing `p([lo, hi])`.
fn eval_interval(p: &RatPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut alo = Rat::zero();
    let mut ahi = Rat::zero();
    for c in p.coeffs().iter().rev() {
        let cands = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut nlo = cands[0].clone();
        let mut nhi = cands[0].clone();
        for c in &cands[1..] {
            if *c < nlo {
                nlo = c.clone();
            }
            if *c > nhi {
                nhi = c.clone();
            }
        }
        alo = nlo + c;
        ahi = nhi + c;
    }
    (alo, ahi)
}

/// A real algebraic number: primitive integer minimal polynomial with
/// positive leading coefficient plus an open rational isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealAlgebraic {
    minpoly: IntPoly,
    lo: Rat,
    hi: Rat,
    chain: Vec<RatPoly>,
}

impl RealAlgebraic {
    /// Build and validate. The polynomial is normalized to be primitive with
    /// positive leading coefficient; it must be squarefree, free of rational
    /// roots when its degree exceeds 1, nonvanishing at the endpoints, and
    /// must have exactly one root in the interval.
    ///
    /// Irreducibility beyond the rational-root exclusion is only certified
    /// opportunistically (see [`RealAlgebraic::certify_irreducible`]); a
    /// composite of two irrational factors is not detected here.
    pub fn new(minpoly: IntPoly, lo: Rat, hi: Rat) -> Result<RealAlgebraic> {
        if minpoly.is_zero() || minpoly.degree() == Some(0) {
            return Err(Error::BadAlgebraic("minimal polynomial is constant".into()));
        }
        let minpoly = minpoly.primitive_normalized();
        let sf = minpoly.squarefree_part();
        if sf != minpoly {
            return Err(Error::BadAlgebraic(
                "minimal polynomial is not squarefree".into(),
            ));
        }
        if minpoly.degree() > Some(1) {
            if let Some(r) = rational_root(&minpoly) {
                return Err(Error::BadAlgebraic(format!(
                    "minimal polynomial has rational root {r}, so it is reducible"
                )));
            }
        }
        if lo >= hi {
            return Err(Error::BadAlgebraic("empty isolating interval".into()));
        }
        let chain = sturm_chain(&minpoly.to_rat());
        if chain[0].sign_at(&lo) == Sign::Zero || chain[0].sign_at(&hi) == Sign::Zero {
            return Err(Error::EndpointRoot);
        }
        let roots = count_in_interval(&chain, &lo, &hi)?;
        if roots != 1 {
            return Err(Error::BadAlgebraic(format!(
                "interval isolates {roots} roots instead of exactly one"
            )));
        }
        Ok(RealAlgebraic {
            minpoly,
            lo,
            hi,
            chain,
        })
    }

    /// The algebraic number equal to a given rational.
    pub fn from_rational(r: &Rat) -> RealAlgebraic {
        let minpoly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        RealAlgebraic::new(minpoly, r - Rat::one(), r + Rat::one())
            .expect("linear polynomial is always valid")
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// Exact rational value when the degree is 1.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.degree() == 1 {
            let c = self.minpoly.coeffs();
            Some(Rat::new(-c[0].clone(), c[1].clone()))
        } else {
            None
        }
    }

    fn midpoint(&self, lo: &Rat, hi: &Rat) -> Rat {
        (lo + hi) / Rat::from_integer(Int::from(2))
    }

    /// One bisection step on a local copy of the interval.
    fn bisect(&self, lo: &mut Rat, hi: &mut Rat) {
        if let Some(r) = self.as_rational() {
            let half = (&hi.clone() - &lo.clone()) / Rat::from_integer(Int::from(4));
            *lo = &r - &half;
            *hi = &r + &half;
            return;
        }
        let mid = self.midpoint(lo, hi);
        // Degree >= 2 with no rational roots, so the midpoint is never a root.
        let left = count_in_interval(&self.chain, lo, &mid).expect("midpoint is not a root");
        if left == 1 {
            *hi = mid;
        } else {
            *lo = mid;
        }
    }

    /// A copy of this number with isolating interval narrowed below `width`.
    pub fn refine_to_width(&self, width: &Rat) -> RealAlgebraic {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        while &(&hi - &lo) >= width {
            self.bisect(&mut lo, &mut hi);
        }
        RealAlgebraic {
            minpoly: self.minpoly.clone(),
            lo,
            hi,
            chain: self.chain.clone(),
        }
    }

    /// Exact sign of `p` evaluated at this number.
    pub fn sign_at(&self, p: &RatPoly) -> Sign {
        let rem = p.rem(&self.minpoly.to_rat());
        if rem.is_zero() {
            return Sign::Zero;
        }
        if let Some(r) = self.as_rational() {
            return rem.sign_at(&r);
        }
        // If the (supposedly irreducible) minimal polynomial shares a factor
        // with the remainder whose root lands in our interval, the value is an
        // exact zero; this keeps the loop below terminating even when a
        // reducible polynomial slipped through validation.
        let g = rem.gcd(&self.minpoly.to_rat());
        if g.degree() > Some(0) {
            let gi = g.clear_denominators();
            if sturm_count(&gi, &self.lo, &self.hi).unwrap_or(0) >= 1 {
                return Sign::Zero;
            }
        }
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        loop {
            let (vlo, vhi) = eval_interval(&rem, &lo, &hi);
            if vlo.is_positive() {
                return Sign::Pos;
            }
            if vhi.is_negative() {
                return Sign::Neg;
            }
            self.bisect(&mut lo, &mut hi);
        }
    }

    pub fn sign_at_int(&self, p: &IntPoly) -> Sign {
        self.sign_at(&p.to_rat())
    }

    /// Sign of `self - t`.
    pub fn compare_rational(&self, t: &Rat) -> Sign {
        self.sign_at(&RatPoly::new(vec![-t, Rat::one()]))
    }

    pub fn is_positive(&self) -> bool {
        self.compare_rational(&Rat::zero()) == Sign::Pos
    }

    /// Try to certify irreducibility by factoring modulo a few small primes;
    /// returns the certifying prime if one is found. `None` is inconclusive.
    pub fn certify_irreducible(&self) -> Option<u64> {
        certify_irreducible(&self.minpoly)
    }

    // --- arithmetic in the field generated by this number ---

    pub fn reduce(&self, p: RatPoly) -> QAlphaElem {
        QAlphaElem {
            rep: p.rem(&self.minpoly.to_rat()),
        }
    }

    pub fn qa_add(&self, u: &QAlphaElem, v: &QAlphaElem) -> QAlphaElem {
        self.reduce(u.rep.add(&v.rep))
    }

    pub fn qa_sub(&self, u: &QAlphaElem, v: &QAlphaElem) -> QAlphaElem {
        self.reduce(u.rep.sub(&v.rep))
    }

    pub fn qa_mul(&self, u: &QAlphaElem, v: &QAlphaElem) -> QAlphaElem {
        self.reduce(u.rep.mul(&v.rep))
    }

    pub fn qa_inv(&self, u: &QAlphaElem) -> Result<QAlphaElem> {
        if u.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = u.rep.extended_gcd(&self.minpoly.to_rat());
        if g.degree() != Some(0) {
            // Shared factor with a reducible modulus: invertibility depends on
            // whether our root kills u; if it does, this is division by zero.
            if self.sign_at(&u.rep) == Sign::Zero {
                return Err(Error::DivisionByZero);
            }
            return Err(Error::BadAlgebraic(
                "element not invertible modulo a reducible minimal polynomial".into(),
            ));
        }
        let scale = g.coeffs()[0].recip();
        Ok(self.reduce(s.scale(&scale)))
    }

    pub fn qa_pow(&self, u: &QAlphaElem, e: i64) -> Result<QAlphaElem> {
        let base = if e < 0 { self.qa_inv(u)? } else { u.clone() };
        let mut out = QAlphaElem::one();
        for _ in 0..e.unsigned_abs() {
            out = self.qa_mul(&out, &base);
        }
        Ok(out)
    }

    pub fn qa_sign(&self, u: &QAlphaElem) -> Sign {
        self.sign_at(&u.rep)
    }

    /// The generator itself as a field element.
    pub fn generator(&self) -> QAlphaElem {
        self.reduce(RatPoly::new(vec![Rat::zero(), Rat::one()]))
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in ({}, {})", self.minpoly, self.lo, self.hi)
    }
}

/// Find a rational root of a primitive integer polynomial, if one exists.
/// Exhaustive over the rational-root-theorem candidates.
fn rational_root(p: &IntPoly) -> Option<Rat> {
    if p.constant_term().is_zero() {
        return Some(Rat::zero());
    }
    let a0 = p.constant_term().abs();
    let an = p.leading()?.abs();
    let nums = divisors(&a0);
    let dens = divisors(&an);
    for n in &nums {
        for d in &dens {
            for s in [1, -1] {
                let cand = Rat::new(n * Int::from(s), d.clone());
                if p.eval_rat(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut d = Int::one();
    while &(&d * &d) <= n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

/// Mod-p irreducibility certificate: returns a prime p for which the
/// polynomial stays squarefree and irreducible over GF(p), which proves
/// irreducibility over the rationals. Inconclusive (`None`) otherwise.
pub fn certify_irreducible(p: &IntPoly) -> Option<u64> {
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    if deg == 1 {
        return Some(2);
    }
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29].into_iter().find(|&q| modp::is_irreducible(p, q))
}

/// Polynomial arithmetic over GF(p) for the irreducibility certificate.
mod modp {
    use super::IntPoly;
    use num_traits::{Signed, Zero};

    fn reduce(p: &IntPoly, q: u64) -> Vec<u64> {
        let m = crate::Int::from(q);
        let mut out: Vec<u64> = p
            .coeffs()
            .iter()
            .map(|c| {
                let mut r = c % &m;
                if r.is_negative() {
                    r += &m;
                }
                let digits = r.to_u64_digits().1;
                digits.first().copied().unwrap_or(0)
            })
            .collect();
        while matches!(out.last(), Some(0)) {
            out.pop();
        }
        out
    }

    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while matches!(v.last(), Some(0)) {
            v.pop();
        }
        v
    }

    fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % q;
            }
        }
        trim(out)
    }

    fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = mod_inv(b[db], q);
        while r.len() > db {
            let c = (r[r.len() - 1] * inv) % q;
            let shift = r.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate() {
                let idx = shift + j;
                let sub = (c * bc) % q;
                r[idx] = (r[idx] + q - sub) % q;
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = rem(&x, &y, q);
            x = y;
            y = r;
        }
        x
    }

    fn mod_inv(a: u64, q: u64) -> u64 {
        // q is prime and small; Fermat.
        let mut result = 1u64;
        let mut base = a % q;
        let mut e = q - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        result
    }

    fn derivative(a: &[u64], q: u64) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (c * (i as u64 % q)) % q)
                .collect(),
        )
    }

    /// x^(q^e) mod f, by iterating the Frobenius.
    fn frobenius_power(f: &[u64], q: u64, e: usize) -> Vec<u64> {
        let mut acc = rem(&[0, 1], f, q);
        for _ in 0..e {
            acc = pow_mod(&acc, q, f, q);
        }
        acc
    }

    fn pow_mod(base: &[u64], mut e: u64, f: &[u64], q: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, q), f, q);
            }
            b = rem(&mul(&b, &b, q), f, q);
            e >>= 1;
        }
        result
    }

    /// Irreducibility over GF(q): f squarefree mod q, x^(q^n) = x mod f, and
    /// gcd(x^(q^(n/t)) - x, f) = 1 for every prime divisor t of n.
    pub fn is_irreducible(p: &IntPoly, q: u64) -> bool {
        let lead = p.leading().expect("nonzero");
        if (lead % crate::Int::from(q)).is_zero() {
            return false;
        }
        let f = reduce(p, q);
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        let d = derivative(&f, q);
        if d.is_empty() || gcd(&f, &d, q).len() != 1 {
            return false;
        }
        // x^(q^n) must equal x.
        let top = frobenius_power(&f, q, n);
        let x = rem(&[0, 1], &f, q);
        let diff = sub(&top, &x, q);
        if !diff.is_empty() {
            return false;
        }
        for t in prime_divisors(n) {
            let m = frobenius_power(&f, q, n / t);
            let diff = sub(&m, &x, q);
            if diff.is_empty() {
                return false;
            }
            if gcd(&f, &diff, q).len() != 1 {
                return false;
            }
        }
        true
    }

    fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, &c) in a.iter().enumerate() {
            out[i] = c % q;
        }
        for (i, &c) in b.iter().enumerate() {
            out[i] = (out[i] + q - c % q) % q;
        }
        trim(out)
    }

    fn prime_divisors(mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }
}

/// Element of the field generated by one real algebraic number, stored as a
/// rational polynomial of degree below the minimal polynomial's.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QAlphaElem {
    rep: RatPoly,
}

impl QAlphaElem {
    pub fn from_rat(r: Rat) -> QAlphaElem {
        QAlphaElem {
            rep: RatPoly::constant(r),
        }
    }

    pub fn from_poly_unchecked(rep: RatPoly) -> QAlphaElem {
        QAlphaElem { rep }
    }

    pub fn zero() -> QAlphaElem {
        QAlphaElem::from_rat(Rat::zero())
    }

    pub fn one() -> QAlphaElem {
        QAlphaElem::from_rat(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    /// Rational value, if the representative is constant.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.rep.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.rep.coeffs()[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Display for QAlphaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{r}");
        }
        let parts: Vec<String> = self
            .rep
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sign of an element against an optional ambient algebraic number. Without
/// one, the element must be rational.
pub fn elem_sign(alpha: Option<&RealAlgebraic>, u: &QAlphaElem) -> Result<Sign> {
    match alpha {
        Some(a) => Ok(a.qa_sign(u)),
        None => match u.as_rat() {
            Some(r) => Ok(Sign::of_rat(&r)),
            None => Err(Error::Config(
                "algebraic entry used without an ambient algebraic number".into(),
            )),
        },
    }
}

#[cfg(test)]
pub(crate) fn sqrt2() -> RealAlgebraic {
    RealAlgebraic::new(
        IntPoly::from_i64(&[-2, 0, 1]),
        Rat::from_integer(Int::from(1)),
        Rat::from_integer(Int::from(2)),
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(Int::from(n), Int::from(d))
    }

    #[test]
    fn sturm_counts() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &rat(1, 1), &rat(2, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &rat(-2, 1), &rat(2, 1)).unwrap(), 2);
        let q = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
        assert!(matches!(
            sturm_count(&p, &rat(0, 1), &rat(2, 1)),
            Ok(1)
        ));
        // Endpoint root reported.
        let r = IntPoly::from_i64(&[-1, 1]);
        assert!(matches!(
            sturm_count(&r, &rat(1, 1), &rat(2, 1)),
            Err(Error::EndpointRoot)
        ));
    }

    #[test]
    fn sturm_partition_additivity() {
        let p = IntPoly::from_i64(&[0, -7, 0, 1]); // x^3 - 7x
        let total = sturm_count(&p, &rat(-5, 1), &rat(5, 1)).unwrap();
        let a = sturm_count(&p, &rat(-5, 1), &rat(-1, 2)).unwrap();
        let b = sturm_count(&p, &rat(-1, 2), &rat(1, 2)).unwrap();
        let c = sturm_count(&p, &rat(1, 2), &rat(5, 1)).unwrap();
        assert_eq!(total, a + b + c);
        assert_eq!(total, 3);
    }

    #[test]
    fn from_rational_specs() {
        let two = RealAlgebraic::from_rational(&rat(2, 1));
        assert_eq!(two.minpoly(), &IntPoly::from_i64(&[-2, 1]));
        let th = RealAlgebraic::from_rational(&rat(3, 2));
        assert_eq!(th.minpoly(), &IntPoly::from_i64(&[-3, 2]));
        let zero = RealAlgebraic::from_rational(&rat(0, 1));
        assert_eq!(zero.minpoly(), &IntPoly::from_i64(&[0, 1]));
        assert_eq!(two.compare_rational(&rat(2, 1)), Sign::Zero);
    }

    #[test]
    fn sign_at_sqrt2() {
        let a = sqrt2();
        assert_eq!(a.sign_at_int(&IntPoly::from_i64(&[-2, 0, 1])), Sign::Zero);
        assert_eq!(a.sign_at_int(&IntPoly::from_i64(&[-1, 1])), Sign::Pos);
        assert_eq!(a.sign_at_int(&IntPoly::from_i64(&[3, -2])), Sign::Pos);
        assert_eq!(a.compare_rational(&rat(1, 1)), Sign::Pos);
        assert_eq!(a.compare_rational(&rat(3, 2)), Sign::Neg);
    }

    #[test]
    fn mirror_antisymmetry() {
        // -sqrt(2) as a root of the same polynomial in the mirrored interval.
        let a = sqrt2();
        let b = RealAlgebraic::new(
            IntPoly::from_i64(&[-2, 0, 1]),
            rat(-2, 1),
            rat(-1, 1),
        )
        .unwrap();
        for t in [rat(0, 1), rat(7, 5), rat(-7, 5), rat(3, 2), rat(141, 100)] {
            assert_eq!(a.compare_rational(&t), -b.compare_rational(&-&t));
        }
    }

    #[test]
    fn rejects_bad_minpolys() {
        // (x^2-2)^2 is not squarefree.
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert!(RealAlgebraic::new(p.mul(&p), rat(1, 1), rat(2, 1)).is_err());
        // (x-1)(x-3) has rational roots.
        assert!(RealAlgebraic::new(
            IntPoly::from_i64(&[3, -4, 1]),
            rat(0, 1),
            rat(2, 1)
        )
        .is_err());
        // Interval with two roots.
        assert!(RealAlgebraic::new(
            IntPoly::from_i64(&[-2, 0, 1]),
            rat(-2, 1),
            rat(2, 1)
        )
        .is_err());
    }

    #[test]
    fn field_arithmetic_in_q_sqrt2() {
        let a = sqrt2();
        let g = a.generator();
        assert_eq!(a.qa_mul(&g, &g), QAlphaElem::from_rat(rat(2, 1)));
        let one_plus = a.qa_add(&QAlphaElem::one(), &g);
        let one_minus = a.qa_sub(&QAlphaElem::one(), &g);
        assert_eq!(
            a.qa_add(&one_plus, &one_minus),
            QAlphaElem::from_rat(rat(2, 1))
        );
        let inv = a.qa_inv(&g).unwrap();
        assert_eq!(a.qa_mul(&g, &inv), QAlphaElem::one());
        // inv(sqrt2) = sqrt2/2.
        assert_eq!(
            inv,
            QAlphaElem::from_poly_unchecked(RatPoly::new(vec![rat(0, 1), rat(1, 2)]))
        );
        assert!(a.qa_inv(&QAlphaElem::zero()).is_err());
    }

    #[test]
    fn refine_narrows() {
        let a = sqrt2();
        let b = a.refine_to_width(&rat(1, 1000));
        let (lo, hi) = b.interval();
        assert!((hi - lo) < rat(1, 1000));
        assert_eq!(b.sign_at_int(&IntPoly::from_i64(&[-2, 0, 1])), Sign::Zero);
    }

    #[test]
    fn irreducibility_certificates() {
        assert!(certify_irreducible(&IntPoly::from_i64(&[-2, 0, 1])).is_some());
        assert!(certify_irreducible(&IntPoly::from_i64(&[-2, 1])).is_some());
        // x^4 + 1 is irreducible over Q but reducible mod every prime:
        // the certificate is inconclusive, not wrong.
        assert_eq!(certify_irreducible(&IntPoly::from_i64(&[1, 0, 0, 0, 1])), None);
    }

    #[test]
    fn minpoly_sign_is_zero_always() {
        let a = sqrt2();
        let mp = a.minpoly().clone();
        assert_eq!(a.sign_at_int(&mp), Sign::Zero);
        let scaled = mp.mul(&IntPoly::from_i64(&[7]));
        assert_eq!(a.sign_at_int(&scaled), Sign::Zero);
    }
}
