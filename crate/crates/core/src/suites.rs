//! Deterministic check suites behind the command-line `check` subcommands.
//! Each returns a [`Report`] whose violations replay through the witnesses.

use num_traits::One;

use crate::harness::{Report, Violation};
use crate::laurent::{IntPoly, LaurentPoly, Monomial};
use crate::magnus::{GroupWord, WreathElement};
use crate::zxord::ZxOrderSpec;
use crate::{Int, Result, Sign};

/// Exhaustive convexity check for the first convex subgroup of a
/// shift-invariant order: over all polynomials with support in
/// `{1, x, ..., x^max_degree}` and coefficients in `[-coeff_bound,
/// coeff_bound]`, the multiples of the depth-1 chain generator must form a
/// contiguous block of the sorted sample.
pub fn zx_convexity(
    spec: &ZxOrderSpec,
    max_degree: usize,
    coeff_bound: i64,
) -> Result<Report> {
    let gen = spec
        .chain(1)?
        .pop()
        .expect("chain of depth 1 has two entries");
    let width = (2 * coeff_bound + 1) as usize;
    let count = width.pow(max_degree as u32 + 1);
    let mut sample: Vec<LaurentPoly> = Vec::with_capacity(count);
    for idx in 0..count {
        let mut rem = idx;
        let mut coeffs = Vec::with_capacity(max_degree + 1);
        for _ in 0..=max_degree {
            coeffs.push((rem % width) as i64 - coeff_bound);
            rem /= width;
        }
        sample.push(IntPoly::from_i64(&coeffs).to_laurent());
    }
    // Total order on the sample.
    let mut order: Vec<usize> = (0..sample.len()).collect();
    let mut err = None;
    order.sort_by(|&i, &j| {
        match spec.compare(&sample[i], &sample[j]) {
            Ok(Sign::Neg) => std::cmp::Ordering::Less,
            Ok(Sign::Zero) => std::cmp::Ordering::Equal,
            Ok(Sign::Pos) => std::cmp::Ordering::Greater,
            Err(e) => {
                err = Some(e);
                std::cmp::Ordering::Equal
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let member = |f: &LaurentPoly| f.is_zero() || f.divexact_uni(&gen).is_ok();
    let positions: Vec<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, &i)| member(&sample[i]))
        .map(|(pos, _)| pos)
        .collect();
    let mut violations = Vec::new();
    if let (Some(&lo), Some(&hi)) = (positions.first(), positions.last()) {
        for pos in lo..=hi {
            let f = &sample[order[pos]];
            if !member(f) {
                violations.push(Violation {
                    check: "convexity".into(),
                    words: vec![
                        sample[order[lo]].to_string(),
                        f.to_string(),
                        sample[order[hi]].to_string(),
                    ],
                    detail: "element between subgroup members is not a member".into(),
                });
            }
        }
    }
    Ok(Report {
        suite: "convexity".into(),
        trials: count as u64,
        seed: 0,
        params: serde_json::json!({
            "chain_generator": gen.to_string(),
            "max_degree": max_degree,
            "coeff_bound": coeff_bound,
        }),
        violations,
    })
}

/// All Jacobi combinations up to a rank must evaluate to the identity.
pub fn jacobi_suite(max_rank: usize) -> Result<Report> {
    let mut violations = Vec::new();
    let mut trials = 0;
    for rank in 3..=max_rank.max(3) {
        for i in 0..rank {
            for j in i + 1..rank {
                for k in j + 1..rank {
                    trials += 1;
                    let e = WreathElement::jacobi(rank, i, j, k)?;
                    if !e.is_identity() {
                        violations.push(Violation {
                            check: "jacobi".into(),
                            words: vec![format!("{rank}:{},{},{}", i + 1, j + 1, k + 1)],
                            detail: format!("J evaluates to {e}"),
                        });
                    }
                }
            }
        }
    }
    Ok(Report {
        suite: "jacobi".into(),
        trials,
        seed: 0,
        params: serde_json::json!({ "max_rank": max_rank }),
        violations,
    })
}

/// The commutator power formula: `[a^m, b^n]` equals the commutator `[a, b]`
/// raised to the module exponent `(1 + a + ... + a^{m-1})(1 + b + ... +
/// b^{n-1})`, checked for all exponents up to a bound plus randomly
/// conjugated instances. (At exponents 1 and 2 the geometric sums coincide
/// with the binomial powers `(1+a)^{m-1} (1+b)^{n-1}`.)
pub fn lemma61_suite(max_exp: i64, random_conj: u64, seed: u64) -> Result<Report> {
    use rand::{Rng, SeedableRng};
    let mut violations = Vec::new();
    let mut trials = 0;
    let mut check = |m: i64, n: i64, conj: Option<&GroupWord>| -> Result<()> {
        trials += 1;
        if !lemma61_instance(m, n, conj)? {
            violations.push(Violation {
                check: "lemma61".into(),
                words: vec![
                    format!("{m},{n}"),
                    conj.map(|w| w.to_string()).unwrap_or_default(),
                ],
                detail: "power formula mismatch".into(),
            });
        }
        Ok(())
    };
    for m in 1..=max_exp {
        for n in 1..=max_exp {
            check(m, n, None)?;
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let sampler = crate::harness::WordSampler {
        rank: 2,
        mean_len: 4,
        max_len: 10,
    };
    for _ in 0..random_conj {
        let m = rng.gen_range(1..=max_exp);
        let n = rng.gen_range(1..=max_exp);
        let w = sampler.sample(&mut rng);
        check(m, n, Some(&w))?;
    }
    Ok(Report {
        suite: "lemma61".into(),
        trials,
        seed,
        params: serde_json::json!({ "max_exp": max_exp, "random_conj": random_conj }),
        violations,
    })
}

/// One instance of the commutator power formula; `true` when it holds.
pub fn lemma61_instance(m: i64, n: i64, conj: Option<&GroupWord>) -> Result<bool> {
    let a = WreathElement::generator(2, 0)?;
    let b = WreathElement::generator(2, 1)?;
    let c = WreathElement::commutator(&a, &b)?;
    let geometric = |k: i64, var: usize| -> LaurentPoly {
        LaurentPoly::from_terms(
            2,
            (0..k).map(|i| {
                let mut mo = Monomial::zero(2);
                mo.0[var] = i;
                (mo, Int::one())
            }),
        )
    };
    let mut lhs = WreathElement::commutator(&a.pow(m)?, &b.pow(n)?)?;
    let mut base = c;
    if let Some(w) = conj {
        let g = WreathElement::eval(w);
        lhs = lhs.conj(&g)?;
        base = base.conj(&g)?;
    }
    let rhs = base.module_exp(&geometric(m, 0).mul(&geometric(n, 1))?)?;
    Ok(lhs == rhs)
}

/// Exhaust words of bounded length checking the word problem and the
/// metabelian law on random instances; used by the word-problem suite.
pub fn word_problem_suite(trials: u64, seed: u64, max_rank: usize, max_len: u32) -> Result<Report> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let rank = rng.gen_range(2..=max_rank);
        let sampler = crate::harness::WordSampler {
            rank,
            mean_len: max_len / 2,
            max_len,
        };
        let w = sampler.sample(&mut rng);
        let ww = w.concat(&w.inverse())?;
        if !WreathElement::eval(&ww).is_identity() {
            violations.push(Violation {
                check: "word-inverse".into(),
                words: vec![w.to_string()],
                detail: "w * w^{-1} did not evaluate to the identity".into(),
            });
        }
    }
    Ok(Report {
        suite: "word-problem".into(),
        trials,
        seed,
        params: serde_json::json!({ "max_rank": max_rank, "max_len": max_len }),
        violations,
    })
}

/// The defining law: double commutators of arbitrary subwords vanish.
pub fn metabelian_law_suite(trials: u64, seed: u64, subword_len: u32) -> Result<Report> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let sampler = crate::harness::WordSampler {
        rank: 2,
        mean_len: subword_len / 2,
        max_len: subword_len,
    };
    let mut violations = Vec::new();
    for _ in 0..trials {
        let words: Vec<GroupWord> = (0..4).map(|_| sampler.sample(&mut rng)).collect();
        let els: Vec<WreathElement> = words.iter().map(WreathElement::eval).collect();
        let inner1 = WreathElement::commutator(&els[0], &els[1])?;
        let inner2 = WreathElement::commutator(&els[2], &els[3])?;
        if !WreathElement::commutator(&inner1, &inner2)?.is_identity() {
            violations.push(Violation {
                check: "metabelian-law".into(),
                words: words.iter().map(|w| w.to_string()).collect(),
                detail: "[[u,v],[w,z]] is not the identity".into(),
            });
        }
    }
    Ok(Report {
        suite: "metabelian-law".into(),
        trials,
        seed,
        params: serde_json::json!({ "subword_len": subword_len }),
        violations,
    })
}

/// Augmentations of evaluated base coordinates must equal letter counts.
pub fn augmentation_suite(trials: u64, seed: u64, rank: usize) -> Result<Report> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let sampler = crate::harness::WordSampler::new(rank);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let w = sampler.sample(&mut rng);
        let e = WreathElement::eval(&w);
        let mut sums = vec![0i64; rank];
        for l in w.letters() {
            sums[l.gen] += if l.inverse { -1 } else { 1 };
        }
        for (i, &s) in sums.iter().enumerate() {
            if e.slot(i).augmentation() != Int::from(s) {
                violations.push(Violation {
                    check: "augmentation".into(),
                    words: vec![w.to_string()],
                    detail: format!("slot {} augmentation differs", i + 1),
                });
            }
        }
        if !e.in_image() {
            violations.push(Violation {
                check: "image".into(),
                words: vec![w.to_string()],
                detail: "evaluated word failed the image criterion".into(),
            });
        }
    }
    Ok(Report {
        suite: "augmentation".into(),
        trials,
        seed,
        params: serde_json::json!({ "rank": rank }),
        violations,
    })
}

/// Parse a replay witness polynomial.
pub fn zx_parse(text: &str) -> Result<LaurentPoly> {
    LaurentPoly::parse(1, text)
}
