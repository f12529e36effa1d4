//! Sparse multivariate Laurent polynomials over the integers, together with
//! the dense univariate integer/rational polynomials the rest of the kernel
//! leans on.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector under the
//! graded-lexicographic order, so equal polynomials have identical storage and
//! the text printer is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result, Sign};

/// Exponent vector of a Laurent monomial. Entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn zero(vars: usize) -> Monomial {
        Monomial(vec![0; vars])
    }

    /// Exponent vector with a single 1 at `var` (0-based).
    pub fn unit(vars: usize, var: usize) -> Monomial {
        let mut e = vec![0; vars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    /// Graded-lexicographic: total degree first, then lexicographic.
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial with integer coefficients in a fixed number of
/// variables. Stored zero coefficients are never kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<Monomial, Int>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> LaurentPoly {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> LaurentPoly {
        LaurentPoly::constant(vars, Int::one())
    }

    pub fn constant(vars: usize, c: Int) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::zero(vars), c);
        }
        LaurentPoly { vars, terms }
    }

    /// Single term `c * x^m`.
    pub fn term(m: Monomial, c: Int) -> LaurentPoly {
        let vars = m.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { vars, terms }
    }

    /// The variable `x_{var}` (0-based) in `vars` variables.
    pub fn var(vars: usize, var: usize) -> LaurentPoly {
        LaurentPoly::term(Monomial::unit(vars, var), Int::one())
    }

    pub fn from_terms(vars: usize, it: impl IntoIterator<Item = (Monomial, Int)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        for (m, c) in it {
            debug_assert_eq!(m.len(), vars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Int) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Int {
        self.terms.get(m).cloned().unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Int)> {
        self.terms.iter()
    }

    /// Support: the set of exponent vectors carrying nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    fn check_vars(&self, other: &LaurentPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarCountMismatch {
                expected: self.vars,
                got: other.vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_vars(other)?;
        let mut out = LaurentPoly::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn mul_int(&self, c: &Int) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.vars);
        }
        LaurentPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Translate every exponent vector by `q` (multiplication by the monomial
    /// `x^q`, a unit of the Laurent ring).
    pub fn shift(&self, q: &Monomial) -> Result<LaurentPoly> {
        if q.len() != self.vars {
            return Err(Error::VarCountMismatch {
                expected: self.vars,
                got: q.len(),
            });
        }
        Ok(LaurentPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.add(q), c.clone()))
                .collect(),
        })
    }

    /// Sum of all coefficients; a ring homomorphism onto the integers.
    pub fn augmentation(&self) -> Int {
        self.terms.values().sum()
    }

    /// Substitute every variable by its inverse (`x^q` becomes `x^{-q}`).
    pub fn invert_vars(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.neg(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of the support exponents; `None` for zero.
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| {
            Monomial(acc.0.iter().zip(&m.0).map(|(a, b)| (*a).min(*b)).collect())
        }))
    }

    /// View a one-variable polynomial as `x^shift * dense`, where `dense` has a
    /// nonzero constant term (for nonzero input).
    pub fn to_univariate(&self) -> Result<(i64, IntPoly)> {
        if self.vars != 1 {
            return Err(Error::NotUnivariate { got: self.vars });
        }
        if self.is_zero() {
            return Ok((0, IntPoly::zero()));
        }
        let min = self.terms.keys().map(|m| m.0[0]).min().unwrap();
        let max = self.terms.keys().map(|m| m.0[0]).max().unwrap();
        let mut coeffs = vec![Int::zero(); (max - min + 1) as usize];
        for (m, c) in &self.terms {
            coeffs[(m.0[0] - min) as usize] = c.clone();
        }
        Ok((min, IntPoly::new(coeffs)))
    }

    pub fn from_univariate(shift: i64, p: &IntPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            1,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial(vec![shift + i as i64]), c.clone())),
        )
    }

    /// Exact division of a univariate Laurent polynomial by an ordinary
    /// integer polynomial. Monomials are units, so the divisor's own monomial
    /// content is factored out first.
    pub fn divexact_uni(&self, p: &IntPoly) -> Result<LaurentPoly> {
        if self.vars != 1 {
            return Err(Error::NotUnivariate { got: self.vars });
        }
        if p.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(1));
        }
        let (s, f0) = self.to_univariate()?;
        let (t, p0) = p.split_monomial();
        let q = f0.divexact(&p0)?;
        Ok(LaurentPoly::from_univariate(s - t, &q))
    }

    /// Evaluate a univariate Laurent polynomial at a nonzero rational.
    pub fn eval_rat(&self, x: &Rat) -> Result<Rat> {
        let (s, p) = self.to_univariate()?;
        let base = p.eval_rat(x);
        let scale = rat_pow(x, s);
        Ok(base * scale)
    }

    /// Exact division by `x_var - 1`; fails when the input is not a multiple.
    pub fn divexact_var_minus_one(&self, var: usize) -> Result<LaurentPoly> {
        if var >= self.vars {
            return Err(Error::VarCountMismatch {
                expected: self.vars,
                got: var,
            });
        }
        // Synthetic division at x_var = 1, grouping terms by their x_var
        // exponent. Work on exponents shifted to be nonnegative.
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.vars));
        }
        let min = self.terms.keys().map(|m| m.0[var]).min().unwrap();
        let max = self.terms.keys().map(|m| m.0[var]).max().unwrap();
        let width = (max - min) as usize + 1;
        // rows[d] = coefficient of x_var^(min+d), a polynomial in the other
        // variables (kept as LaurentPoly with x_var exponent zeroed).
        let mut rows: Vec<LaurentPoly> = vec![LaurentPoly::zero(self.vars); width];
        for (m, c) in &self.terms {
            let d = (m.0[var] - min) as usize;
            let mut rest = m.clone();
            rest.0[var] = 0;
            rows[d].add_term(rest, c.clone());
        }
        // f = (x-1) * q  =>  processing from the top degree down, the partial
        // sums of the rows give -q's rows; the final sum is the remainder.
        let mut acc = LaurentPoly::zero(self.vars);
        let mut q_rows: Vec<LaurentPoly> = vec![LaurentPoly::zero(self.vars); width];
        for d in (0..width).rev() {
            acc = acc.add(&rows[d])?;
            if d > 0 {
                q_rows[d - 1] = acc.clone();
            }
        }
        if !acc.is_zero() {
            return Err(Error::NotDivisible);
        }
        let mut out = LaurentPoly::zero(self.vars);
        for (d, row) in q_rows.iter().enumerate() {
            for (m, c) in &row.terms {
                let mut full = m.clone();
                full.0[var] = min + d as i64;
                out.add_term(full, c.clone());
            }
        }
        Ok(out)
    }

    /// Parse the text form, e.g. `3*x1^-2*x2 + 1`. Bare `x` means `x1`.
    pub fn parse(vars: usize, input: &str) -> Result<LaurentPoly> {
        parse_poly(vars, input)
    }
}

fn rat_pow(x: &Rat, e: i64) -> Rat {
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut out = Rat::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Ascending graded-lex, matching storage order.
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_zero() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(format!("x{}", v + 1));
                } else {
                    factors.push(format!("x{}^{}", v + 1, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    vars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn parse_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut s = String::new();
        if matches!(self.chars.peek(), Some('-') | Some('+')) {
            s.push(self.chars.next().unwrap());
        }
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        s.parse::<i64>()
            .map_err(|_| Error::Parse(format!("expected integer, got {s:?}")))
    }

    fn parse_term(&mut self) -> Result<(Monomial, Int)> {
        let mut coeff = Int::one();
        let mut mono = Monomial::zero(self.vars);
        let mut saw_factor = false;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                        s.push(self.chars.next().unwrap());
                    }
                    coeff *= s.parse::<Int>().unwrap();
                    saw_factor = true;
                }
                Some('x') => {
                    self.chars.next();
                    let mut idx = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                        idx.push(self.chars.next().unwrap());
                    }
                    let v: usize = if idx.is_empty() {
                        1
                    } else {
                        idx.parse()
                            .map_err(|_| Error::Parse(format!("bad variable index {idx:?}")))?
                    };
                    if v == 0 || v > self.vars {
                        return Err(Error::Parse(format!(
                            "variable x{v} out of range for {} variables",
                            self.vars
                        )));
                    }
                    let e = if matches!(self.chars.peek(), Some('^')) {
                        self.chars.next();
                        self.parse_int()?
                    } else {
                        1
                    };
                    mono.0[v - 1] += e;
                    saw_factor = true;
                }
                Some('*') => {
                    self.chars.next();
                }
                _ => break,
            }
        }
        if !saw_factor {
            return Err(Error::Parse("empty term".into()));
        }
        Ok((mono, coeff))
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.vars);
        let mut sign = Int::one();
        self.skip_ws();
        if matches!(self.chars.peek(), Some('-')) {
            self.chars.next();
            sign = -sign;
        } else if matches!(self.chars.peek(), Some('+')) {
            self.chars.next();
        }
        loop {
            let (m, c) = self.parse_term()?;
            out.add_term(m, c * &sign);
            self.skip_ws();
            match self.chars.next() {
                None => break,
                Some('+') => sign = Int::one(),
                Some('-') => sign = -Int::one(),
                Some(c) => return Err(Error::Parse(format!("unexpected character {c:?}"))),
            }
        }
        Ok(out)
    }
}

fn parse_poly(vars: usize, input: &str) -> Result<LaurentPoly> {
    let mut p = Parser {
        chars: input.chars().peekable(),
        vars,
    };
    p.parse_poly()
}

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree order with a nonzero top coefficient (empty vector for zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<Int>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> IntPoly {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn one() -> IntPoly {
        IntPoly(vec![Int::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn leading(&self) -> Option<&Int> {
        self.0.last()
    }

    pub fn constant_term(&self) -> Int {
        self.0.first().cloned().unwrap_or_else(Int::zero)
    }

    /// Lowest-degree nonzero coefficient (zero for the zero polynomial).
    pub fn trailing(&self) -> Int {
        self.0
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(Int::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Int::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        if self.0.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect(),
        )
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Greatest common divisor of the coefficients (positive; 0 for zero).
    pub fn content(&self) -> Int {
        self.0
            .iter()
            .fold(Int::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_normalized(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut ct = self.content();
        if self.leading().unwrap().is_negative() {
            ct = -ct;
        }
        IntPoly(self.0.iter().map(|c| c / &ct).collect())
    }

    /// Factor as x^k * p with p(0) != 0; returns (k, p).
    pub fn split_monomial(&self) -> (i64, IntPoly) {
        if self.is_zero() {
            return (0, IntPoly::zero());
        }
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (k as i64, IntPoly(self.0[k..].to_vec()))
    }

    /// Exact division in the integer polynomial ring.
    pub fn divexact(&self, div: &IntPoly) -> Result<IntPoly> {
        if div.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let (q, r) = RatPoly::from_int(self).div_rem(&RatPoly::from_int(div));
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        q.to_int().ok_or(Error::NotDivisible)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_int(self)
    }

    /// Squarefree part p / gcd(p, p').
    pub fn squarefree_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let g = self.to_rat().gcd(&self.derivative().to_rat());
        let (q, _) = self.to_rat().div_rem(&g);
        q.clear_denominators().primitive_normalized()
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_univariate(0, self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

/// Dense univariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly(Vec<Rat>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> RatPoly {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn zero() -> RatPoly {
        RatPoly(Vec::new())
    }

    pub fn one() -> RatPoly {
        RatPoly(vec![Rat::one()])
    }

    pub fn constant(c: Rat) -> RatPoly {
        RatPoly::new(vec![c])
    }

    pub fn from_int(p: &IntPoly) -> RatPoly {
        RatPoly(
            p.coeffs()
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.0.last()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly(self.0.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, div: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.0.len();
        if self.0.len() < dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let mut quo = vec![Rat::zero(); self.0.len() - dd + 1];
        let lead = div.0.last().unwrap();
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in div.0.iter().enumerate() {
                let t = d * &c;
                rem[i + j] -= t;
            }
            quo[i] = c;
        }
        (RatPoly::new(quo), RatPoly::new(rem))
    }

    pub fn rem(&self, div: &RatPoly) -> RatPoly {
        self.div_rem(div).1
    }

    /// Monic gcd; returns 1-normalized nonzero polynomial or zero if both zero.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Extended Euclid: returns (g, s, t) with s*self + t*other = g (monic).
    pub fn extended_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.leading() {
            None => (RatPoly::zero(), s0, t0),
            Some(l) => {
                let inv = l.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Multiply through by the lcm of denominators to get an integer poly.
    pub fn clear_denominators(&self) -> IntPoly {
        let mut lcm = Int::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        IntPoly::new(
            self.0
                .iter()
                .map(|c| {
                    let scaled = c * Rat::from_integer(lcm.clone());
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect(),
        )
    }

    /// Exact conversion to an integer polynomial, if all coefficients are
    /// integers.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            if !c.is_integer() {
                return None;
            }
            out.push(c.to_integer());
        }
        Some(IntPoly::new(out))
    }

    pub fn sign_at(&self, x: &Rat) -> Sign {
        Sign::of_rat(&self.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(s: &str) -> LaurentPoly {
        LaurentPoly::parse(1, s).unwrap()
    }

    fn p2(s: &str) -> LaurentPoly {
        LaurentPoly::parse(2, s).unwrap()
    }

    #[test]
    fn ring_identities() {
        let a = p1("1 + x");
        let b = p1("1 - x");
        assert_eq!(a.mul(&b).unwrap(), p1("1 - x^2"));
        let f = p2("3*x1^-2*x2 + 1 - x1*x2^3");
        assert!(f.add(&f.neg()).unwrap().is_zero());
    }

    #[test]
    fn var_count_mismatch() {
        let a = p1("x");
        let b = p2("x1");
        assert!(matches!(
            a.add(&b),
            Err(Error::VarCountMismatch { .. })
        ));
    }

    #[test]
    fn shift_translates_support() {
        let f = p1("1 + x");
        let shifted = f.shift(&Monomial(vec![-1])).unwrap();
        assert_eq!(shifted, p1("x^-1 + 1"));
        assert!(LaurentPoly::zero(1)
            .shift(&Monomial(vec![5]))
            .unwrap()
            .is_zero());
        let g = p1("x - 1").shift(&Monomial(vec![1])).unwrap();
        assert_eq!(g, p1("x^2 - x"));
        assert_eq!(g.term_count(), 2);
    }

    #[test]
    fn augmentation_is_hom() {
        let f = p2("1 - x2");
        assert!(f.augmentation().is_zero());
        assert!(LaurentPoly::zero(2).augmentation().is_zero());
        let g = p2("x1*x2 + 3");
        assert_eq!(
            f.mul(&g).unwrap().augmentation(),
            f.augmentation() * g.augmentation()
        );
    }

    #[test]
    fn support_sets() {
        assert_eq!(LaurentPoly::zero(2).support().count(), 0);
        let f = p2("1 - x2");
        let supp: Vec<_> = f.support().cloned().collect();
        assert!(supp.contains(&Monomial(vec![0, 0])));
        assert!(supp.contains(&Monomial(vec![0, 1])));
        assert_eq!(supp.len(), 2);
        // The three coefficients (1 - x_i) of the degree-3 relator expansion
        // carry two monomials each: six across the three slots.
        let one = LaurentPoly::one(3);
        let total: usize = (0..3)
            .map(|i| {
                one.sub(&LaurentPoly::var(3, i))
                    .unwrap()
                    .support()
                    .count()
            })
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn divexact_cases() {
        let x2m2 = IntPoly::from_i64(&[-2, 0, 1]);
        let f = p1("x^2 - 2");
        assert_eq!(f.divexact_uni(&x2m2).unwrap(), p1("1"));
        let g = p1("x^3 - 2*x");
        assert_eq!(g.divexact_uni(&x2m2).unwrap(), p1("x"));
        let h = p1("x^2 - 1");
        assert!(matches!(h.divexact_uni(&x2m2), Err(Error::NotDivisible)));
        assert!(matches!(
            f.divexact_uni(&IntPoly::zero()),
            Err(Error::ZeroDivisor)
        ));
        // Negative powers: x^-1(x^2-2) / (x^2-2) = x^-1.
        let k = p1("x - 2*x^-1");
        assert_eq!(k.divexact_uni(&x2m2).unwrap(), p1("x^-1"));
        // Dividing by x shifts, since x is a unit.
        let m = p1("x^2 + x");
        assert_eq!(m.divexact_uni(&IntPoly::from_i64(&[0, 1])).unwrap(), p1("x + 1"));
    }

    #[test]
    fn divexact_product_roundtrip() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let g = p1("x^-3 + 4 - x^2");
        let f = g.mul(&p.to_laurent()).unwrap();
        assert_eq!(f.divexact_uni(&p).unwrap(), g);
    }

    #[test]
    fn parse_print_roundtrip() {
        for s in ["3*x1^-2*x2 + 1", "-x1 + x2", "0", "5", "x1^3 - 2*x1 + 7"] {
            let f = p2(s);
            assert_eq!(p2(&f.to_string()), f);
        }
        let g = p1("3 - 2*x");
        assert_eq!(g.coeff(&Monomial(vec![0])), Int::from(3));
        assert_eq!(g.coeff(&Monomial(vec![1])), Int::from(-2));
    }

    #[test]
    fn display_is_canonical() {
        let f = p2("1 + 3*x1^-2*x2");
        assert_eq!(f.to_string(), "3*x1^-2*x2 + 1");
        assert_eq!(p1("x - x").to_string(), "0");
    }

    #[test]
    fn divexact_var_minus_one() {
        let f = p2("x1*x2 - x2");
        assert_eq!(f.divexact_var_minus_one(0).unwrap(), p2("x2"));
        let g = p2("x1 - x2");
        assert!(g.divexact_var_minus_one(0).is_err());
        let h = p2("x1^2 - 1")
            .mul(&p2("x2^-1 + 3"))
            .unwrap();
        let q = h.divexact_var_minus_one(0).unwrap();
        assert_eq!(
            q.mul(&p2("x1 - 1")).unwrap(),
            h
        );
    }

    #[test]
    fn intpoly_division() {
        let a = IntPoly::from_i64(&[-2, 0, 1]);
        let b = IntPoly::from_i64(&[0, 1]);
        let prod = a.mul(&b);
        assert_eq!(prod.divexact(&a).unwrap(), b);
        assert!(IntPoly::from_i64(&[1, 1]).divexact(&a).is_err());
    }

    #[test]
    fn squarefree() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let sq = p.mul(&p);
        assert_eq!(sq.squarefree_part(), p);
    }

    #[test]
    fn ratpoly_euclid() {
        let a = RatPoly::from_int(&IntPoly::from_i64(&[-2, 0, 1]));
        let b = RatPoly::from_int(&IntPoly::from_i64(&[1, 1]));
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(g, RatPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), RatPoly::one());
    }
}
